// Typed client for the game service JSON API. The service is the single
// source of truth for rules; this file only moves snapshots around.

export type Mode = "original" | "variant";
export type ShapeName = "square" | "round";
export type GameStatus = "playing" | "won" | "lost";

export interface TokenView {
  color: number;
  shape: ShapeName;
}

export interface Snapshot {
  mode: Mode;
  status: GameStatus;
  numColors: number;
  boxes: TokenView[][];
  decided: Record<string, ShapeName>;
  history: unknown[];
}

export interface OriginalMove {
  color: number;
  shape: ShapeName;
}

export interface VariantMove extends OriginalMove {
  boxIndex: number;
}

export type Move = OriginalMove | VariantMove;

export interface CatalogEntry {
  id: string;
  source: "builtin" | "file";
  numColors: number;
  numBoxes: number;
}

export interface HintResponse {
  move: Move | null;
  message: string;
  advisory: boolean;
}

export interface GenSource {
  numVars: number;
  numClauses: number;
  clauseWidth: number;
  seed: number;
}

export type InstanceSource =
  | { builtin: string }
  | { gen: GenSource };

export interface CreateResponse {
  sessionId: string;
  snapshot: Snapshot;
}

/** Error carrying the service's machine-readable reason, when there is one. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly reason: string | null,
    message: string,
  ) {
    super(message);
  }
}

/** Reject snapshots that violate the wire schema before they reach the
 * board, so a misbehaving server freezes the UI instead of corrupting it. */
export function validateSnapshot(snapshot: Snapshot): Snapshot {
  if (!Array.isArray(snapshot.boxes)) {
    throw new ApiError(0, null, "malformed snapshot: boxes missing");
  }
  for (const box of snapshot.boxes) {
    for (const token of box) {
      if (token.shape !== "square" && token.shape !== "round") {
        throw new ApiError(0, null, `malformed snapshot: unknown shape ${String(token.shape)}`);
      }
      if (typeof token.color !== "number") {
        throw new ApiError(0, null, "malformed snapshot: non-numeric color");
      }
    }
  }
  return snapshot;
}

async function parseError(res: Response): Promise<never> {
  let reason: string | null = null;
  let message = `request failed with status ${res.status}`;
  try {
    const payload = (await res.json()) as { reason?: string; error?: string };
    reason = payload.reason ?? null;
    message = payload.reason ?? payload.error ?? message;
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(res.status, reason, message);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const res = await fetch(this.baseUrl + path);
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  private async post<T>(path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? null : JSON.stringify(body),
    });
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  listInstances(): Promise<{ instances: CatalogEntry[] }> {
    return this.get("/api/instances");
  }

  createGame(source: InstanceSource, mode: Mode): Promise<CreateResponse> {
    return this.post("/api/games", { source, mode });
  }

  getGame(sessionId: string): Promise<Snapshot> {
    return this.get(`/api/games/${sessionId}`);
  }

  applyMove(sessionId: string, move: Move): Promise<Snapshot> {
    return this.post(`/api/games/${sessionId}/moves`, move);
  }

  undo(sessionId: string): Promise<Snapshot> {
    return this.post(`/api/games/${sessionId}/undo`);
  }

  hint(sessionId: string): Promise<HintResponse> {
    return this.get(`/api/games/${sessionId}/hint`);
  }
}
