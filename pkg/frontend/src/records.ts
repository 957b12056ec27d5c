/** Structured-record editors: requirements table, definitions, numbered
 *  functions (with the live FHD beside the list) and the sign-off block.
 *  All writes go through the API; server errors land next to the form. */

import { ApiClient, REQ_ID_PATTERN, Requirement } from "./api.js";
import { EditorState, Store, runMutation } from "./state.js";
import { bindStatus, el, errorBox, memoRender, serverErrorBox } from "./ui.js";

const REQ_KINDS = [
  "functional",
  "behavioural",
  "user-interface",
  "hardware-interface",
  "software-interface",
  "communication-interface",
  "performance",
  "safety",
  "security",
  "quality",
  "other",
];

function input(id: string, placeholder: string, value = ""): HTMLInputElement {
  return el("input", { id, placeholder, value }) as HTMLInputElement;
}

function mutateButton(id: string, label: string, onclick: () => void): HTMLButtonElement {
  return el("button", { id, "data-mutates": "true", onclick }, [label]) as HTMLButtonElement;
}

function deleteButton(onclick: () => void): HTMLButtonElement {
  return el(
    "button",
    { class: "danger", "data-mutates": "true", onclick },
    ["delete"],
  ) as HTMLButtonElement;
}

export function mountRequirements(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) =>
      state.selected.kind !== "requirements" || !state.snapshot
        ? "off"
        : JSON.stringify(state.snapshot.requirements),
    (state) => {
      if (state.selected.kind !== "requirements" || !state.snapshot) {
        return el("div", { class: "hidden" });
      }
      const snapshot = state.snapshot;
      const rows = snapshot.requirements.map((r) =>
        el("tr", { "data-req": r.id }, [
          el("td", {}, [r.id]),
          el("td", {}, [r.kind]),
          el("td", {}, [r.title]),
          el("td", { class: "muted" }, [r.trace.join(", ")]),
          el("td", {}, [
            deleteButton(() => void runMutation(store, api, () => api.deleteRequirement(r.id))),
          ]),
        ]),
      );

      const idField = input("req-id", "FR-1");
      const kindField = el(
        "select",
        { id: "req-kind" },
        REQ_KINDS.map((kind) => el("option", { value: kind }, [kind])),
      ) as HTMLSelectElement;
      const titleField = input("req-title", "title");
      const textField = el("textarea", { id: "req-text", rows: "3" }) as HTMLTextAreaElement;
      const traceField = input("req-trace", "trace ids, comma separated");
      const clientError = errorBox(null);

      const save = mutateButton("req-save", "Save requirement", () => {
        const id = idField.value.trim();
        if (!REQ_ID_PATTERN.test(id)) {
          clientError.textContent =
            "Requirement id must be 1-4 capitals, a dash and a number (e.g. FR-1).";
          clientError.classList.remove("hidden");
          return;
        }
        const requirement: Requirement = {
          id,
          kind: kindField.value,
          title: titleField.value,
          text: textField.value,
          trace: traceField.value
            .split(",")
            .map((part) => part.trim())
            .filter((part) => part.length > 0),
        };
        const exists = snapshot.requirements.some((r) => r.id === id);
        void runMutation(store, api, () =>
          exists ? api.updateRequirement(requirement) : api.addRequirement(requirement),
        );
      });

      return el("section", { id: "requirements-editor" }, [
        el("h2", {}, ["Requirements"]),
        el("table", { id: "req-table" }, [
          el("thead", {}, [
            el("tr", {}, ["id", "kind", "title", "trace", ""].map((h) => el("th", {}, [h]))),
          ]),
          el("tbody", {}, rows),
        ]),
        el("h3", {}, ["Add or update"]),
        el("div", { class: "form-grid" }, [idField, kindField, titleField, traceField]),
        textField,
        el("div", { class: "row" }, [save]),
        clientError,
        serverErrorBox(),
      ]);
    },
  );
  store.subscribe(render);
  bindStatus(container, (fn) => store.subscribe(fn));
}

export function mountDefinitions(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) =>
      state.selected.kind !== "definitions" || !state.snapshot
        ? "off"
        : JSON.stringify(state.snapshot.definitions),
    (state) => {
      if (state.selected.kind !== "definitions" || !state.snapshot) {
        return el("div", { class: "hidden" });
      }
      const items = state.snapshot.definitions.map((d) =>
        el("li", { "data-term": d.term }, [
          el("strong", {}, [d.term]),
          `: ${d.meaning}`,
          deleteButton(() => void runMutation(store, api, () => api.deleteDefinition(d.term))),
        ]),
      );
      const termField = input("def-term", "Term");
      const meaningField = el("textarea", { id: "def-meaning", rows: "3" }) as HTMLTextAreaElement;
      const save = mutateButton("def-save", "Save definition", () =>
        void runMutation(store, api, () =>
          api.putDefinition(termField.value.trim(), meaningField.value),
        ),
      );
      return el("section", { id: "definitions-editor" }, [
        el("h2", {}, ["Definitions"]),
        el("ul", { id: "def-list" }, items),
        el("div", { class: "form-grid" }, [termField]),
        meaningField,
        el("div", { class: "row" }, [save]),
        serverErrorBox(),
      ]);
    },
  );
  store.subscribe(render);
  bindStatus(container, (fn) => store.subscribe(fn));
}

export function mountFunctions(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) =>
      state.selected.kind !== "functions" || !state.snapshot
        ? "off"
        : JSON.stringify([state.snapshot.functions, state.fhd]),
    (state) => {
      if (state.selected.kind !== "functions" || !state.snapshot) {
        return el("div", { class: "hidden" });
      }
      const items = state.snapshot.functions.map((f) =>
        el("li", { "data-fn": f.number }, [
          `${f.number}. ${f.title}`,
          deleteButton(() => void runMutation(store, api, () => api.deleteFunction(f.number))),
        ]),
      );
      const numberField = input("fn-number", "1.2");
      const titleField = input("fn-title", "title");
      const save = mutateButton("fn-save", "Save function", () =>
        void runMutation(store, api, () =>
          api.putFunction(numberField.value.trim(), titleField.value),
        ),
      );
      return el("section", { id: "functions-editor" }, [
        el("h2", {}, ["Product functions"]),
        el("div", { class: "columns" }, [
          el("div", {}, [
            el("ul", { id: "fn-list" }, items),
            el("div", { class: "form-grid" }, [numberField, titleField]),
            el("div", { class: "row" }, [save]),
          ]),
          el("pre", { id: "fhd-view", "aria-label": "function hierarchy" }, [state.fhd]),
        ]),
        serverErrorBox(),
      ]);
    },
  );
  store.subscribe(render);
  bindStatus(container, (fn) => store.subscribe(fn));
}

export function mountSignoffs(container: HTMLElement, store: Store, api: ApiClient): void {
  const render = memoRender<EditorState>(
    container,
    (state) =>
      state.selected.kind !== "signoffs" || !state.snapshot
        ? "off"
        : JSON.stringify(state.snapshot.signoffs),
    (state) => {
      if (state.selected.kind !== "signoffs" || !state.snapshot) {
        return el("div", { class: "hidden" });
      }
      const rows = state.snapshot.signoffs.map((signoff) => {
        const nameField = el("input", {
          id: `signoff-name-${signoff.role}`,
          value: signoff.name,
          placeholder: "name",
        }) as HTMLInputElement;
        const dateField = el("input", {
          id: `signoff-date-${signoff.role}`,
          value: signoff.date,
          placeholder: "YYYY-MM-DD",
        }) as HTMLInputElement;
        return el("div", { class: "signoff-row", "data-role": signoff.role }, [
          el("span", { class: "signoff-role" }, [signoff.role]),
          nameField,
          dateField,
          mutateButton(`signoff-save-${signoff.role}`, "Save", () =>
            void runMutation(store, api, () =>
              api.putSignoff(signoff.role, nameField.value, dateField.value.trim()),
            ),
          ),
        ]);
      });
      return el("section", { id: "signoff-editor" }, [
        el("h2", {}, ["Sign-offs"]),
        el("p", { class: "muted" }, [state.snapshot.document_title]),
        ...rows,
        serverErrorBox(),
      ]);
    },
  );
  store.subscribe(render);
  bindStatus(container, (fn) => store.subscribe(fn));
}
