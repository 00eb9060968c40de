/**
 * Optimistic mutation helper.
 *
 * 1. Applies the predicted state immediately.
 * 2. Fires the API call.
 * 3. On success, reconciles with the server's response.
 * 4. On failure, reverts to the pre-apply state and reports the error.
 */

export interface OptimisticOptions<T> {
  apply: () => void;
  remote: () => Promise<T>;
  reconcile: (result: T) => void;
  revert: () => void;
  onError?: (error: Error) => void;
}

let pending = 0;

/** True while any optimistic mutation is still waiting on the server. */
export function hasPendingMutations(): boolean {
  return pending > 0;
}

export async function withOptimistic<T>(options: OptimisticOptions<T>): Promise<T | undefined> {
  const { apply, remote, reconcile, revert, onError } = options;

  apply();
  pending += 1;
  try {
    const result = await remote();
    reconcile(result);
    return result;
  } catch (error) {
    revert();
    const err = error instanceof Error ? error : new Error(String(error));
    if (onError) {
      onError(err);
    }
    return undefined;
  } finally {
    pending -= 1;
  }
}
