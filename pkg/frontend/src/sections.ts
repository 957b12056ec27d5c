/** Section editor: textarea bound to the body, an explicit "Mark NA"
 *  toggle, and a save that PUTs /api/sections/{path}.  Empty text is
 *  blocked client-side: the NA toggle is the way to say "nothing here". */

import { ApiClient, SectionBody } from "./api.js";
import { EditorState, Store, runMutation } from "./state.js";
import { bindStatus, el, errorBox, memoRender, serverErrorBox } from "./ui.js";

function bodyText(body: SectionBody | undefined): string {
  return body && "text" in body ? body.text : "";
}

function isNa(body: SectionBody | undefined): boolean {
  return !!body && "na" in body;
}

export function mountSectionEditor(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) => {
      if (state.selected.kind !== "section" || !state.snapshot) return "off";
      return JSON.stringify([
        state.selected.path,
        state.snapshot.sections[state.selected.path] ?? null,
      ]);
    },
    (state) => {
      if (state.selected.kind !== "section" || !state.snapshot) {
        return el("div", { class: "hidden" });
      }
      const path = state.selected.path;
      const node = state.snapshot.template.nodes.find((n) => n.path === path);
      if (!node) return el("p", {}, [`unknown section ${path}`]);

      const body = state.snapshot.sections[path];
      const textarea = el("textarea", {
        id: "section-text",
        rows: "10",
        oninput: () => store.markDirty(path),
      }) as HTMLTextAreaElement;
      textarea.value = bodyText(body);
      const naToggle = el("input", {
        type: "checkbox",
        id: "section-na",
        checked: isNa(body),
        onchange: () => {
          textarea.disabled = naToggle.checked;
          store.markDirty(path);
        },
      }) as HTMLInputElement;
      textarea.disabled = naToggle.checked;

      const clientError = errorBox(null);
      const save = el(
        "button",
        {
          id: "section-save",
          "data-mutates": "true",
          disabled: store.state.pending,
          onclick: () => {
            if (!naToggle.checked && textarea.value.trim() === "") {
              clientError.textContent =
                "Section text is empty; use the Mark NA toggle instead.";
              clientError.classList.remove("hidden");
              return;
            }
            void runMutation(store, api, () =>
              api.putSection(path, naToggle.checked ? "NA" : textarea.value),
            );
          },
        },
        ["Save section"],
      );

      return el("section", { id: "section-editor" }, [
        el("h2", {}, [node.label]),
        el("p", { class: "muted" }, [path + (node.mandatory ? "  (mandatory)" : "")]),
        el("label", { class: "toggle" }, [naToggle, " Mark NA (not applicable)"]),
        textarea,
        el("div", { class: "row" }, [save]),
        clientError,
        serverErrorBox(),
      ]);
    },
  );
  store.subscribe(render);
  bindStatus(container, (fn) => store.subscribe(fn));
}
