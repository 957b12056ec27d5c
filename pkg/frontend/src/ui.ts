/** Small DOM helpers; no framework, the app renders straight into elements. */

type Attrs = Record<string, string | boolean | ((event: Event) => void)>;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
      else node.removeAttribute(key);
      if (key === "disabled") (node as unknown as { disabled: boolean }).disabled = value;
      if (key === "checked") (node as unknown as { checked: boolean }).checked = value;
    } else {
      node.setAttribute(key, value);
      if (key === "value") (node as unknown as { value: string }).value = value;
    }
  }
  for (const child of children) {
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

export function replaceChildren(container: HTMLElement, ...children: (Node | string)[]): void {
  container.replaceChildren(...children);
}

/** Re-render only when the derived key changes, so typing in a form does
 *  not destroy the form under the caret. */
export function memoRender<T>(
  container: HTMLElement,
  key: (state: T) => string,
  render: (state: T) => Node,
): (state: T) => void {
  let last: string | null = null;
  return (state: T) => {
    const next = key(state);
    if (next === last) return;
    last = next;
    replaceChildren(container, render(state));
  };
}

export function errorBox(message: string | null): HTMLElement {
  const box = el("div", { class: "error-box", role: "alert" });
  if (message) box.textContent = message;
  else box.classList.add("hidden");
  return box;
}

export function serverErrorBox(): HTMLElement {
  return el("div", { class: "error-box server-error hidden", role: "alert" });
}

/** Imperative status pass: failed-mutation message into `.server-error`
 *  boxes, and every `data-mutates` button disabled while a mutation is in
 *  flight.  Kept out of the render keys so a failed save never rebuilds the
 *  form under the user's unsaved input. */
export function bindStatus(container: HTMLElement, subscribe: (fn: (state: { pending: boolean; error: string | null }) => void) => void): void {
  subscribe((state) => {
    for (const box of container.querySelectorAll<HTMLElement>(".server-error")) {
      box.textContent = state.error ?? "";
      box.classList.toggle("hidden", !state.error);
    }
    for (const button of container.querySelectorAll<HTMLButtonElement>("button[data-mutates]")) {
      button.disabled = state.pending;
    }
  });
}
