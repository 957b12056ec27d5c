/** Validation panel and preview pane.
 *
 *  Both are displays of server output only: the panel lists the diagnostics
 *  array verbatim and the preview imports the server-rendered document,
 *  so the client never re-derives a finding or a single rendered byte. */

import { ApiClient, DiagnosticRow, Profile } from "./api.js";
import { EditorState, Store, View, refresh } from "./state.js";
import { el, memoRender } from "./ui.js";

function locusView(state: EditorState, diagnostic: DiagnosticRow): View | null {
  const snapshot = state.snapshot;
  if (!snapshot) return null;
  const node = snapshot.template.nodes.find((n) => n.path === diagnostic.locus);
  if (node) {
    if (node.kind === "definitions") return { kind: "definitions" };
    if (node.kind === "functions") return { kind: "functions" };
    if (node.kind === "requirements") return { kind: "requirements" };
    return { kind: "section", path: node.path };
  }
  if (snapshot.requirements.some((r) => r.id === diagnostic.locus)) {
    return { kind: "requirements" };
  }
  if (snapshot.functions.some((f) => f.number === diagnostic.locus)) {
    return { kind: "functions" };
  }
  if (snapshot.signoffs.some((s) => s.role === diagnostic.locus)) {
    return { kind: "signoffs" };
  }
  return null;
}

export function mountDiagnostics(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) => JSON.stringify([state.diagnostics, state.profile, state.snapshot?.title]),
    (state) => {
      const select = el(
        "select",
        {
          id: "profile-select",
          onchange: () => {
            store.set({ profile: select.value as Profile });
            void refresh(store, api);
          },
        },
        ["strict", "lenient"].map((name) =>
          el("option", { value: name, selected: state.profile === name }, [name]),
        ),
      ) as HTMLSelectElement;
      select.value = state.profile;

      const rows = state.diagnostics.map((diagnostic) =>
        el(
          "li",
          {
            class: `diag-row diag-${diagnostic.severity}`,
            onclick: () => {
              const view = locusView(state, diagnostic);
              if (view) store.set({ selected: view });
            },
          },
          [
            el("span", { class: "diag-sev" }, [diagnostic.severity.toUpperCase()]),
            ` ${diagnostic.code} ${diagnostic.locus}: ${diagnostic.message}`,
          ],
        ),
      );
      return el("section", { id: "diagnostics-panel" }, [
        el("div", { class: "row" }, [
          el("h2", {}, ["Diagnostics"]),
          el("span", { id: "diag-count", class: "badge" }, [String(state.diagnostics.length)]),
          select,
        ]),
        el("ul", { id: "diag-list" }, rows),
      ]);
    },
  );
  store.subscribe(render);
}

export function mountPreview(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) => JSON.stringify([state.previewFormat, state.previewContent]),
    (state) => {
      const select = el(
        "select",
        {
          id: "preview-format",
          onchange: () => {
            store.set({ previewFormat: select.value as EditorState["previewFormat"] });
            void refresh(store, api);
          },
        },
        ["html", "text", "markdown"].map((name) =>
          el("option", { value: name, selected: state.previewFormat === name }, [name]),
        ),
      ) as HTMLSelectElement;
      select.value = state.previewFormat;

      const pane = el("div", { id: "preview-pane" });
      if (state.previewFormat === "html") {
        // import the server document's body wholesale; no local rendering
        const parsed = new DOMParser().parseFromString(state.previewContent, "text/html");
        for (const child of Array.from(parsed.body.children)) {
          pane.append(document.importNode(child, true));
        }
      } else {
        pane.append(el("pre", {}, [state.previewContent]));
      }
      return el("section", { id: "preview" }, [
        el("div", { class: "row" }, [el("h2", {}, ["Preview"]), select]),
        pane,
      ]);
    },
  );
  store.subscribe(render);
}
