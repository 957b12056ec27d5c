import { describe, expect, it } from "vitest";

import { ApiClient, REQ_ID_PATTERN } from "../src/api.js";
import { Store, runMutation } from "../src/state.js";

describe("requirement id pattern", () => {
  it.each(["FR-1", "A-1", "PERF-10", "ZZZZ-999"])("accepts %s", (id) => {
    expect(REQ_ID_PATTERN.test(id)).toBe(true);
  });

  it.each(["fr-1", "FR-0", "FR-01", "TOOBIG-1", "FR1", "FR-", "-1", ""])(
    "rejects %s",
    (id) => {
      expect(REQ_ID_PATTERN.test(id)).toBe(false);
    },
  );
});

describe("store", () => {
  it("notifies subscribers and supports unsubscribe", () => {
    const store = new Store();
    const seen: number[] = [];
    const unsubscribe = store.subscribe((state) => seen.push(state.diagnostics.length));
    store.set({ diagnostics: [] });
    unsubscribe();
    store.set({ diagnostics: [] });
    expect(seen.length).toBe(1);
  });

  it("accumulates dirty fields", () => {
    const store = new Store();
    store.markDirty("introduction.purpose");
    store.markDirty("introduction.scope");
    store.markDirty("introduction.purpose");
    expect([...store.state.dirty].sort()).toEqual([
      "introduction.purpose",
      "introduction.scope",
    ]);
  });
});

function stubApi(): ApiClient {
  // runMutation only touches the refresh calls after a successful mutation
  const api = new ApiClient("http://stub");
  api.getProject = async () =>
    ({
      title: "T",
      id: 0,
      template: { id: "ieee-830", nodes: [] },
      sections: {},
      status: {},
      definitions: [],
      functions: [],
      requirements: [],
      signoffs: [],
      document_title: "D",
      signoff_title_override: null,
    }) as Awaited<ReturnType<ApiClient["getProject"]>>;
  api.diagnostics = async () => [];
  api.render = async () => "<html><body></body></html>";
  api.fhdTree = async () => "T\n";
  return api;
}

describe("runMutation", () => {
  it("refuses a second mutation while one is pending", async () => {
    const store = new Store();
    const api = stubApi();
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    const first = runMutation(store, api, () => gate);
    expect(store.state.pending).toBe(true);
    const second = await runMutation(store, api, async () => {
      throw new Error("must not run");
    });
    expect(second).toBe(false);
    release();
    expect(await first).toBe(true);
    expect(store.state.pending).toBe(false);
  });

  it("clears the dirty set after a successful save round-trip", async () => {
    const store = new Store();
    store.markDirty("introduction.purpose");
    const ok = await runMutation(store, stubApi(), async () => undefined);
    expect(ok).toBe(true);
    expect(store.state.dirty.size).toBe(0);
  });

  it("keeps the error from a failed mutation and stays usable", async () => {
    const store = new Store();
    const api = stubApi();
    const ok = await runMutation(store, api, async () => {
      throw new Error("boom");
    });
    expect(ok).toBe(false);
    expect(store.state.error).toContain("boom");
    expect(store.state.pending).toBe(false);
    expect(await runMutation(store, api, async () => undefined)).toBe(true);
  });
});
