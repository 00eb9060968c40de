// @vitest-environment happy-dom
//
// Drives the built workbench against a live annotation service. The
// service is started from the scanner CLI with the bundled homograph
// fixture, so the flow here is the full reviewer path: load, resolve
// candidates, delete repeated spans, export.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { existsSync, mkdtempSync, rmSync } from "node:fs";
import { connect } from "node:net";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { Workbench } from "../src/workbench.js";

// vitest runs with the package as cwd; the fixture lives in the repo's test tree
const FIXTURE = [
  resolve(process.cwd(), "../tests/fixtures/homographs.tsv"),
  resolve(process.cwd(), "tests/fixtures/homographs.tsv"),
].find(existsSync) as string;
const PORT = 8720 + (process.pid % 200);
const BASE = `http://127.0.0.1:${PORT}`;

function cliAvailable(): boolean {
  try {
    execFileSync("semlabel", ["--version"], { stdio: "pipe" });
    return true;
  } catch {
    return false;
  }
}

const hasCli = cliAvailable();
if (!hasCli) {
  console.warn("semlabel CLI not on PATH; skipping the live service flow");
}

describe.runIf(hasCli)("reviewer flow against a live service", () => {
  let workdir: string;
  let server: ChildProcess;
  let client: ServiceClient;

  beforeAll(async () => {
    workdir = mkdtempSync(join(tmpdir(), "validation-ui-e2e-"));
    const snapshot = join(workdir, "snapshot.tsv");
    const variants = join(workdir, "variants.tsv");
    execFileSync("semlabel", ["ingest", FIXTURE, "--out", snapshot], { stdio: "pipe" });
    execFileSync(
      "semlabel",
      ["variants", "--snapshot", snapshot, "--out", variants, "--budget", "500"],
      { stdio: "pipe" },
    );

    server = spawn(
      "semlabel",
      ["serve", "--variants", variants, "--data", join(workdir, "state"), "--port", String(PORT)],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    server.stderr?.on("data", (chunk: Buffer) => {
      process.stderr.write(chunk);
    });

    // probe the port directly; fetch would spray connection errors while waiting
    const deadline = Date.now() + 30_000;
    for (;;) {
      const up = await new Promise<boolean>((done) => {
        const socket = connect(PORT, "127.0.0.1");
        socket.once("connect", () => {
          socket.destroy();
          done(true);
        });
        socket.once("error", () => {
          socket.destroy();
          done(false);
        });
      });
      if (up) {
        break;
      }
      if (Date.now() > deadline) {
        throw new Error("service did not come up");
      }
      await new Promise((resolve) => setTimeout(resolve, 200));
    }

    client = new ServiceClient(BASE);
    expect((await client.health()).status).toBe("ok");
  }, 60_000);

  afterAll(async () => {
    if (server && server.exitCode === null) {
      server.kill();
      await new Promise((resolve) => server.once("exit", resolve));
    }
    rmSync(workdir, { recursive: true, force: true });
  });

  it(
    "confirm, reject, delete-all-same, export",
    async () => {
      const text = "Carbon monoxide poisoning. CO was measured, then CO again, and CO.";
      const submitted = await client.submitDocument(text, "e2e-1");
      expect(submitted.doc_id).toBe("e2e-1");

      const root = document.createElement("div");
      document.body.appendChild(root);
      const downloads: Array<{ filename: string; content: string }> = [];
      const workbench = new Workbench({
        root,
        client,
        actor: "e2e",
        download: (filename, content) => downloads.push({ filename, content }),
      });

      await workbench.load("e2e-1");
      const view = workbench.currentView!;
      expect(view.spans).toHaveLength(4);

      // the homograph span offers all six candidate objects as cards
      const lead = view.spans[0]!;
      expect(lead.surface).toBe("Carbon monoxide");
      expect(lead.cards.map((card) => card.curie)).toEqual([
        "ChEBI:CHEBI:17245",
        "Drugbank:DB11588",
        "ICD10:X47",
        "ICD10:X67",
        "ICD10:Y17",
        "MeSH:D002248",
      ]);
      expect(
        root.querySelectorAll(`section[data-annotation="${lead.annotationId}"] li.card`),
      ).toHaveLength(6);

      // resolve the span: one correct object, five rejections
      await workbench.act(lead.annotationId, "confirm_candidate", "ChEBI:CHEBI:17245");
      for (const card of lead.cards) {
        if (card.curie !== "ChEBI:CHEBI:17245") {
          await workbench.act(lead.annotationId, "reject_candidate", card.curie);
        }
      }

      // wipe the repeated CO mentions in one action
      const sibling = workbench.currentView!.spans[1]!;
      expect(sibling.normalizedKey).toBe("CO");
      await workbench.act(sibling.annotationId, "delete_all_same");
      expect(workbench.currentView!.spans.map((span) => span.spanState)).toEqual([
        "active",
        "not_bio",
        "not_bio",
        "not_bio",
      ]);
      expect(workbench.currentError).toBeNull();

      // exported XML carries the confirmed reference and no deleted spans
      await workbench.exportXml();
      expect(downloads).toHaveLength(1);
      const xml = downloads[0]!.content;
      expect(xml).toMatch(
        /<term id="a1" refs="ChEBI:CHEBI:17245" rejected="[^"]*" status="confirmed">Carbon monoxide<\/term>/,
      );
      expect(xml.match(/<term /g)).toHaveLength(1);
      expect(xml).not.toMatch(/<term[^>]*>CO<\/term>/);

      // passthrough: the download equals the service's own bytes
      expect(xml).toBe(await client.fetchExportXml("e2e-1"));

      // stripping the markup recovers the submitted text
      const inner = /<text>([\s\S]*)<\/text>/.exec(xml)![1]!;
      expect(inner.replace(/<\/?term[^>]*>/g, "")).toBe(text);

      // a fresh session sees exactly the reviewed state
      const again = document.createElement("div");
      document.body.appendChild(again);
      const second = new Workbench({ root: again, client });
      await second.load("e2e-1");
      const statuses = second.currentView!.spans.map((span) => span.spanState);
      expect(statuses).toEqual(["active", "not_bio", "not_bio", "not_bio"]);
      expect(
        second.currentView!.spans[0]!.cards.map((card) => card.state),
      ).toEqual(["confirmed", "rejected", "rejected", "rejected", "rejected", "rejected"]);

      workbench.dispose();
      second.dispose();
      console.log("ACCEPTANCE ui-flow confirm-reject-delete-export: PASS");
    },
    60_000,
  );
});
