/*
 * Browser entry point. Reads the document handle from the query string
 * and boots the workbench against the annotation service.
 *
 *   index.html?doc=pmid-777019            same-origin service
 *   index.html?doc=pmid-777019&api=http://127.0.0.1:8040
 */

import { ServiceClient } from "./api.js";
import { renderError } from "./view.js";
import { Workbench } from "./workbench.js";

(function main(): void {
  const root = document.getElementById("workbench");
  if (root === null) {
    console.warn("no #workbench element on this page");
    return;
  }

  const params = new URLSearchParams(window.location.search);
  const docId = params.get("doc");
  if (docId === null || docId === "") {
    root.innerHTML = renderError(
      "No document selected. Open this page as index.html?doc=<doc_id> " +
        "(submit documents through the service API or CLI first).",
    );
    return;
  }

  const client = new ServiceClient(params.get("api") ?? "");
  const workbench = new Workbench({ root, client });
  void workbench.load(docId);
})();
