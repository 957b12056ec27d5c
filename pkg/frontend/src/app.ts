/** Shell assembly: header, navigation tree, the active editor, diagnostics
 *  panel and preview pane, all driven by one store. */

import { ApiClient } from "./api.js";
import { mountDiagnostics, mountPreview } from "./panels.js";
import { mountDefinitions, mountFunctions, mountRequirements, mountSignoffs } from "./records.js";
import { mountSectionEditor } from "./sections.js";
import { Store, refresh } from "./state.js";
import { mountTree } from "./tree.js";
import { el, memoRender } from "./ui.js";

export interface App {
  store: Store;
  api: ApiClient;
  /** Resolves once no mutation is in flight (and immediately when idle). */
  idle(): Promise<void>;
}

export async function createApp(root: HTMLElement, apiBase = ""): Promise<App> {
  const store = new Store();
  const api = new ApiClient(apiBase);

  const header = el("header", { id: "app-header" });
  const tree = el("div", { id: "nav" });
  const editors = el("main", { id: "editor" });
  const sectionHost = el("div", {});
  const requirementsHost = el("div", {});
  const definitionsHost = el("div", {});
  const functionsHost = el("div", {});
  const signoffsHost = el("div", {});
  editors.append(sectionHost, requirementsHost, definitionsHost, functionsHost, signoffsHost);
  const side = el("aside", { id: "side" });
  const diagnosticsHost = el("div", {});
  const previewHost = el("div", {});
  side.append(diagnosticsHost, previewHost);
  root.replaceChildren(header, tree, editors, side);

  const renderHeader = memoRender(
    header,
    (state: Store["state"]) =>
      JSON.stringify([state.snapshot?.title, state.snapshot?.id, state.dirty.size, state.pending]),
    (state) =>
      el("div", { class: "row" }, [
        el("h1", {}, [state.snapshot ? state.snapshot.title : "loading"]),
        el("span", { class: "muted" }, [
          state.snapshot ? `project ${state.snapshot.id}` : "",
        ]),
        el("span", { id: "dirty-indicator", class: "muted" }, [
          state.pending ? "saving..." : state.dirty.size ? `unsaved edits: ${state.dirty.size}` : "",
        ]),
      ]),
  );
  store.subscribe(renderHeader);

  mountTree(tree, store, api);
  mountSectionEditor(sectionHost, store, api);
  mountRequirements(requirementsHost, store, api);
  mountDefinitions(definitionsHost, store, api);
  mountFunctions(functionsHost, store, api);
  mountSignoffs(signoffsHost, store, api);
  mountDiagnostics(diagnosticsHost, store, api);
  mountPreview(previewHost, store, api);

  await refresh(store, api);
  const snapshot = store.state.snapshot;
  if (snapshot) {
    const firstText = snapshot.template.nodes.find((n) => n.kind === "text");
    if (firstText) store.set({ selected: { kind: "section", path: firstText.path } });
  }

  return {
    store,
    api,
    idle() {
      if (!store.state.pending) return Promise.resolve();
      return new Promise((resolve) => {
        const unsubscribe = store.subscribe((state) => {
          if (!state.pending) {
            unsubscribe();
            resolve();
          }
        });
      });
    },
  };
}
