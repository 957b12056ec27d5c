/** Navigation tree generated from the template the API returns, so custom
 *  templates appear without UI changes.  Each leaf carries the coverage
 *  badge (filled / na / unset) computed by the server. */

import { TemplateNode } from "./api.js";
import { ApiClient } from "./api.js";
import { EditorState, Store, View } from "./state.js";
import { el, memoRender } from "./ui.js";

const STRUCTURED_VIEWS: { label: string; view: View }[] = [
  { label: "Requirements", view: { kind: "requirements" } },
  { label: "Definitions", view: { kind: "definitions" } },
  { label: "Functions", view: { kind: "functions" } },
  { label: "Sign-offs", view: { kind: "signoffs" } },
];

function viewFor(node: TemplateNode): View {
  switch (node.kind) {
    case "definitions":
      return { kind: "definitions" };
    case "functions":
      return { kind: "functions" };
    case "requirements":
      return { kind: "requirements" };
    default:
      return { kind: "section", path: node.path };
  }
}

function selectedKey(view: View): string {
  return view.kind === "section" ? `section:${view.path}` : view.kind;
}

export function mountTree(container: HTMLElement, store: Store, _api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) =>
      JSON.stringify([
        state.snapshot?.template.id,
        state.snapshot?.status,
        selectedKey(state.selected),
      ]),
    (state) => {
      const root = el("nav", { id: "nav-tree", "aria-label": "sections" });
      if (!state.snapshot) return root;
      const current = selectedKey(state.selected);
      for (const node of state.snapshot.template.nodes) {
        if (node.kind === "container") {
          root.append(el("div", { class: "tree-container" }, [node.label]));
          continue;
        }
        const view = viewFor(node);
        const status = state.snapshot.status[node.path] ?? "unset";
        const button = el(
          "button",
          {
            class:
              "tree-leaf" + (selectedKey(view) === current ? " selected" : ""),
            "data-path": node.path,
            onclick: () => store.set({ selected: view, error: null }),
          },
          [
            el("span", { class: "leaf-label" }, [node.label]),
            el("span", { class: `badge badge-${status}`, "data-status": status }, [status]),
          ],
        );
        root.append(button);
      }
      root.append(el("div", { class: "tree-container" }, ["Records"]));
      for (const entry of STRUCTURED_VIEWS) {
        root.append(
          el(
            "button",
            {
              class:
                "tree-leaf" + (selectedKey(entry.view) === current ? " selected" : ""),
              "data-view": entry.view.kind,
              onclick: () => store.set({ selected: entry.view, error: null }),
            },
            [entry.label],
          ),
        );
      }
      return root;
    },
  );
  store.subscribe(render);
}
