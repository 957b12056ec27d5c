/** Typed client for the srskit service API. The editor never re-implements
 *  rendering or validation: everything displayed comes from these calls. */

export interface TemplateNode {
  path: string;
  label: string;
  kind: "container" | "text" | "definitions" | "functions" | "requirements";
  req_kind: string | null;
  mandatory: boolean;
}

export type SectionBody = { na: true } | { text: string };

export interface Requirement {
  id: string;
  kind: string;
  title: string;
  text: string;
  trace: string[];
}

export interface Signoff {
  role: string;
  name: string;
  date: string;
}

export interface ProjectSnapshot {
  title: string;
  id: number;
  template: { id: string; nodes: TemplateNode[] };
  sections: Record<string, SectionBody>;
  status: Record<string, "filled" | "na" | "unset">;
  definitions: { term: string; meaning: string }[];
  functions: { number: string; title: string }[];
  requirements: Requirement[];
  signoffs: Signoff[];
  document_title: string;
  signoff_title_override: string | null;
}

export interface DiagnosticRow {
  code: string;
  severity: "error" | "warning";
  locus: string;
  message: string;
}

export type Profile = "strict" | "lenient";
export type RenderFormat = "text" | "markdown" | "html";

/** Requirement ids look like FR-1: 1-4 capitals, dash, positive number. */
export const REQ_ID_PATTERN = /^[A-Z]{1,4}-[1-9][0-9]*$/;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function fail(response: Response): Promise<never> {
  let code = "unknown";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) await fail(response);
    return (await response.json()) as T;
  }

  private async text(path: string): Promise<string> {
    const response = await fetch(this.base + path);
    if (!response.ok) await fail(response);
    return await response.text();
  }

  getProject(): Promise<ProjectSnapshot> {
    return this.json("GET", "/api/project");
  }

  putSection(path: string, body: string): Promise<unknown> {
    return this.json("PUT", `/api/sections/${encodeURIComponent(path)}`, { body });
  }

  addRequirement(requirement: Requirement): Promise<unknown> {
    return this.json("POST", "/api/requirements", requirement);
  }

  updateRequirement(requirement: Requirement): Promise<unknown> {
    const { id, ...rest } = requirement;
    return this.json("PUT", `/api/requirements/${encodeURIComponent(id)}`, rest);
  }

  deleteRequirement(id: string): Promise<unknown> {
    return this.json("DELETE", `/api/requirements/${encodeURIComponent(id)}`);
  }

  putDefinition(term: string, meaning: string): Promise<unknown> {
    return this.json("PUT", `/api/definitions/${encodeURIComponent(term)}`, { meaning });
  }

  deleteDefinition(term: string): Promise<unknown> {
    return this.json("DELETE", `/api/definitions/${encodeURIComponent(term)}`);
  }

  putFunction(number: string, title: string): Promise<unknown> {
    return this.json("PUT", `/api/functions/${encodeURIComponent(number)}`, { title });
  }

  deleteFunction(number: string): Promise<unknown> {
    return this.json("DELETE", `/api/functions/${encodeURIComponent(number)}`);
  }

  putSignoff(role: string, name: string, date: string): Promise<unknown> {
    return this.json("PUT", `/api/signoffs/${encodeURIComponent(role)}`, { name, date });
  }

  diagnostics(profile: Profile): Promise<DiagnosticRow[]> {
    return this.json("GET", `/api/diagnostics?profile=${profile}`);
  }

  render(format: RenderFormat): Promise<string> {
    return this.text(`/api/render?format=${format}`);
  }

  fhdTree(): Promise<string> {
    return this.text("/api/fhd?format=tree");
  }
}
