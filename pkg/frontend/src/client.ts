import { Api, ServiceError } from "./api.js";
import type { AnalysisDoc, EngineRole, SessionDoc, WireMove } from "./types.js";

export interface ViewState {
  session: SessionDoc | null;
  engineRole: EngineRole;
  /** hint panel is collapsed until the player opens it */
  hintVisible: boolean;
  hint: AnalysisDoc | null;
  /** last hint refresh failed; what is shown may be out of date */
  hintStale: boolean;
  pendingMove: WireMove | null;
  /** victory announcements and rejection toasts */
  notice: string | null;
  busy: boolean;
}

function initialView(): ViewState {
  return {
    session: null,
    engineRole: "none",
    hintVisible: false,
    hint: null,
    hintStale: false,
    pendingMove: null,
    notice: null,
    busy: false,
  };
}

/** Serialize the session's heaps for /api/analyze, using only the caps the
 * service reported. */
export function heapListOf(session: SessionDoc): string {
  return session.heaps.map((h) => `${h.tokens}:${h.cap}`).join(",");
}

/** Human-facing move label; heaps are 1-indexed in display strings only. */
export function formatMoveLabel(move: WireMove): string {
  return `heap ${move.heap + 1}: take ${move.take}`;
}

function statusNotice(session: SessionDoc, engineRole: EngineRole): string | null {
  if (session.status === "in_progress") {
    return null;
  }
  const winner = session.status === "first_won" ? "first" : "second";
  if (engineRole === "none") {
    return `${winner} player wins`;
  }
  const engine = engineRole === "plays_first" ? "first" : "second";
  return winner === engine ? "engine wins" : "you win";
}

/** View-state machine for one game at a time.  Every cap, value, and
 * status it exposes is copied from a service response; the only
 * client-side check is the pre-validation of a draft take against the
 * cap the service reported.  All mutations are serialized: one in-flight
 * request at a time. */
export class GameClient {
  private view: ViewState = initialView();

  constructor(private readonly api: Api) {}

  state(): ViewState {
    return this.view;
  }

  async newGame(heapsText: string, engineRole: EngineRole): Promise<ViewState> {
    if (this.view.busy) {
      return this.view;
    }
    this.view = { ...initialView(), engineRole, busy: true };
    try {
      const session = await this.api.createGame(heapsText, engineRole);
      this.view = {
        ...this.view,
        session,
        busy: false,
        notice: statusNotice(session, engineRole),
      };
    } catch (err) {
      this.view = { ...this.view, busy: false, notice: describeError(err) };
    }
    return this.view;
  }

  /** Stage a move without sending it.  Rejected immediately when the take
   * exceeds the service-reported cap (the server stays the authority on
   * everything else). */
  draftMove(heap: number, take: number): ViewState {
    const session = this.view.session;
    const cap = session?.heaps[heap]?.cap;
    if (session === null || cap === undefined) {
      this.view = { ...this.view, notice: "no such heap" };
    } else if (take < 1 || take > cap) {
      this.view = { ...this.view, pendingMove: null, notice: `cap for that heap is ${cap}` };
    } else {
      this.view = { ...this.view, pendingMove: { heap, take }, notice: null };
    }
    return this.view;
  }

  async makeMove(heap: number, take: number): Promise<ViewState> {
    const session = this.view.session;
    if (session === null || this.view.busy) {
      return this.view;
    }
    if (session.status !== "in_progress") {
      this.view = { ...this.view, notice: "game is over" };
      return this.view;
    }
    const cap = session.heaps[heap]?.cap;
    if (cap === undefined || take < 1 || take > cap) {
      // blocked client-side; the cap shown is the service's own
      this.view = { ...this.view, notice: `cap for that heap is ${cap ?? 0}` };
      return this.view;
    }
    this.view = { ...this.view, busy: true, pendingMove: null };
    try {
      const updated = await this.api.submitMove(session.id, heap, take);
      this.view = {
        ...this.view,
        session: updated,
        busy: false,
        notice: statusNotice(updated, this.view.engineRole),
      };
      if (this.view.hintVisible) {
        await this.refreshHint();
      }
    } catch (err) {
      this.view = { ...this.view, busy: false, notice: describeError(err) };
    }
    return this.view;
  }

  /** Open (fetching fresh analysis) or collapse the hint panel. */
  async toggleHint(): Promise<ViewState> {
    if (this.view.hintVisible) {
      this.view = { ...this.view, hintVisible: false };
      return this.view;
    }
    this.view = { ...this.view, hintVisible: true };
    await this.refreshHint();
    return this.view;
  }

  private async refreshHint(): Promise<void> {
    const session = this.view.session;
    if (session === null) {
      return;
    }
    try {
      const hint = await this.api.analyze(heapListOf(session));
      this.view = { ...this.view, hint, hintStale: false };
    } catch {
      this.view = { ...this.view, hintStale: true };
    }
  }
}

function describeError(err: unknown): string {
  if (err instanceof ServiceError) {
    if (err.detail.code === "illegal_move" && err.detail.cap != null) {
      return `illegal move: cap is ${err.detail.cap}`;
    }
    return err.detail.message;
  }
  return err instanceof Error ? err.message : String(err);
}
