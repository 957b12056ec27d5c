/** Editor state and the single-flight mutation runner.
 *
 *  The server owns the truth: after every successful mutation the snapshot,
 *  diagnostics and preview are re-fetched, and the dirty-field set empties.
 *  At most one mutation is in flight; save buttons render disabled while
 *  `pending` is true, honoring the service's linear-history contract.
 */

import { ApiClient, ApiError, DiagnosticRow, Profile, ProjectSnapshot, RenderFormat } from "./api.js";

export type View =
  | { kind: "section"; path: string }
  | { kind: "requirements" }
  | { kind: "definitions" }
  | { kind: "functions" }
  | { kind: "signoffs" };

export interface EditorState {
  snapshot: ProjectSnapshot | null;
  dirty: Set<string>;
  selected: View;
  profile: Profile;
  diagnostics: DiagnosticRow[];
  previewFormat: RenderFormat;
  previewContent: string;
  fhd: string;
  pending: boolean;
  /** Last mutation/network failure, shown inline next to the active form. */
  error: string | null;
}

export function initialState(): EditorState {
  return {
    snapshot: null,
    dirty: new Set(),
    selected: { kind: "section", path: "" },
    profile: "strict",
    diagnostics: [],
    previewFormat: "html",
    previewContent: "",
    fhd: "",
    pending: false,
    error: null,
  };
}

type Listener = (state: EditorState) => void;

export class Store {
  private listeners: Listener[] = [];
  state: EditorState = initialState();

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((entry) => entry !== listener);
    };
  }

  set(patch: Partial<EditorState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of [...this.listeners]) listener(this.state);
  }

  markDirty(field: string): void {
    const dirty = new Set(this.state.dirty);
    dirty.add(field);
    this.set({ dirty });
  }
}

/** Pull the latest committed server state into the store. */
export async function refresh(store: Store, api: ApiClient): Promise<void> {
  const snapshot = await api.getProject();
  const diagnostics = await api.diagnostics(store.state.profile);
  const previewContent = await api.render(store.state.previewFormat);
  let fhd: string;
  try {
    fhd = await api.fhdTree();
  } catch (error) {
    fhd = error instanceof ApiError ? `diagram unavailable: ${error.message}` : "diagram unavailable";
  }
  store.set({ snapshot, diagnostics, previewContent, fhd, dirty: new Set() });
}

/** Run one mutation; returns true when it committed.  A second call while
 *  one is pending is refused rather than queued. */
export async function runMutation(
  store: Store,
  api: ApiClient,
  mutation: () => Promise<unknown>,
): Promise<boolean> {
  if (store.state.pending) return false;
  store.set({ pending: true, error: null });
  try {
    await mutation();
    await refresh(store, api);
    return true;
  } catch (error) {
    const message =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : `network failure: ${String(error)}`;
    store.set({ error: message });
    return false;
  } finally {
    store.set({ pending: false });
  }
}
