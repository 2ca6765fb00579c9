/**
 * Session controller: the orchestration the answer buttons invoke.
 *
 * Strict request/response lockstep: one in-flight call at a time,
 * enforced by the view-state phase. Holds no domain logic of its own;
 * it shuttles service payloads into the pure state transitions.
 */

import { ServiceError, SessionApi } from "./api.js";
import {
  applyAnswered,
  applyCreated,
  applyError,
  applyUtility,
  beginCreate,
  beginSubmit,
  canAnswer,
  Choice,
  choiceToSymbol,
  initialState,
  resumeAsking,
  symbolToChoice,
  ViewState,
} from "./state.js";
import type { SessionConfigDto } from "./types.js";

export type StateListener = (state: ViewState) => void;

export class SessionController {
  state: ViewState = initialState();
  private listeners: StateListener[] = [];

  constructor(private readonly api: SessionApi) {}

  subscribe(listener: StateListener): void {
    this.listeners.push(listener);
    listener(this.state);
  }

  private set(next: ViewState): ViewState {
    this.state = next;
    for (const listener of this.listeners) {
      listener(next);
    }
    return next;
  }

  async start(config: SessionConfigDto): Promise<ViewState> {
    this.set(beginCreate());
    try {
      const created = await this.api.createSession(config);
      this.set(applyCreated(this.state, created));
    } catch (err) {
      this.set(applyError(this.state, describe(err)));
    }
    return this.state;
  }

  async answer(choice: Choice): Promise<ViewState> {
    if (!canAnswer(this.state)) {
      return this.state;
    }
    const query = this.state.query!;
    const sessionId = this.state.sessionId!;
    this.set(beginSubmit(this.state));
    try {
      const response = await this.api.postAnswer(
        sessionId,
        query.id,
        choiceToSymbol(choice),
      );
      this.set(applyAnswered(this.state, query, choice, response));
      await this.refreshChart();
    } catch (err) {
      this.set(applyError(this.state, describe(err)));
    }
    return this.state;
  }

  /** Rebuild state for a known session id; false when it is gone. */
  async resume(sessionId: string): Promise<boolean> {
    let log;
    try {
      log = await this.api.getLog(sessionId);
    } catch (err) {
      if (err instanceof ServiceError && err.status === 404) {
        return false;
      }
      this.set(applyError(this.state, describe(err)));
      return true;
    }
    const base: ViewState = {
      ...initialState(),
      sessionId,
      failure: log.failure,
      history: log.entries.map((entry) => ({
        queryId: entry.query.id,
        kind: entry.query.kind,
        sentence: entry.query.prompt_data.sentence,
        choice: symbolToChoice(entry.answer),
        symbol: entry.answer,
      })),
    };
    if (log.status === "Failed") {
      this.set({ ...base, phase: "failed", banner: bannerOfFailure(base) });
      return true;
    }
    if (log.status === "Complete") {
      this.set({
        ...base,
        phase: "complete",
        banner: "Session complete. Final curve below.",
      });
      await this.refreshChart();
      return true;
    }
    try {
      const query = await this.api.getQuery(sessionId);
      this.set(resumeAsking(base, query));
      await this.refreshChart();
    } catch (err) {
      this.set(applyError(base, describe(err)));
    }
    return true;
  }

  /** Recover from an error banner without losing the session. */
  async retry(): Promise<ViewState> {
    const sessionId = this.state.sessionId;
    if (sessionId === null) {
      return this.set(initialState());
    }
    await this.resume(sessionId);
    return this.state;
  }

  /** Pull the latest knots; quietly skip when none exist yet. */
  private async refreshChart(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (sessionId === null || this.state.phase === "failed") {
      return;
    }
    try {
      const utility = await this.api.getUtility(sessionId);
      this.set(applyUtility(this.state, utility));
    } catch (err) {
      if (err instanceof ServiceError && err.code === "TooEarly") {
        return;
      }
      throw err;
    }
  }
}

function bannerOfFailure(state: ViewState): string {
  return state.failure === null
    ? "Session failed."
    : `Session failed: ${state.failure.detail}`;
}

function describe(err: unknown): string {
  if (err instanceof ServiceError) {
    return err.status === 0 ? `service unreachable (${err.detail})` : err.message;
  }
  return String(err);
}
