/**
 * Pure view-state layer: every transition is a plain function from the
 * previous state and a service payload to the next state.
 *
 * Nothing here computes utility values or picks the next query; those
 * numbers come from the service verbatim and are only rearranged for
 * display.
 */

import type {
  AnswerResponse,
  AnswerSymbol,
  CreateSessionResponse,
  FailureDto,
  Knot,
  QueryDto,
  UtilityDto,
} from "./types.js";

export type Choice = "first larger" | "about equal" | "second larger";

export const CHOICES: readonly Choice[] = [
  "first larger",
  "about equal",
  "second larger",
];

const CHOICE_TO_SYMBOL: Record<Choice, AnswerSymbol> = {
  "first larger": ">",
  "about equal": "=",
  "second larger": "<",
};

const SYMBOL_TO_CHOICE: Record<AnswerSymbol, Choice> = {
  ">": "first larger",
  "=": "about equal",
  "<": "second larger",
};

export function choiceToSymbol(choice: Choice): AnswerSymbol {
  return CHOICE_TO_SYMBOL[choice];
}

export function symbolToChoice(symbol: AnswerSymbol): Choice {
  return SYMBOL_TO_CHOICE[symbol];
}

export type Phase =
  | "idle"
  | "creating"
  | "asking"
  | "submitting"
  | "complete"
  | "failed"
  | "error";

export interface AnswerRecord {
  queryId: number;
  kind: QueryDto["kind"];
  sentence: string;
  choice: Choice;
  symbol: AnswerSymbol;
}

export interface ViewState {
  phase: Phase;
  sessionId: string | null;
  queryBudget: number | null;
  query: QueryDto | null;
  history: AnswerRecord[];
  knots: Knot[];
  resolution: number | null;
  failure: FailureDto | null;
  banner: string;
  errorDetail: string | null;
}

export function initialState(): ViewState {
  return {
    phase: "idle",
    sessionId: null,
    queryBudget: null,
    query: null,
    history: [],
    knots: [],
    resolution: null,
    failure: null,
    banner: "Configure a session to begin.",
    errorDetail: null,
  };
}

/** Inline form validation; returns a message or null when acceptable. */
export function validateForm(lo: number, hi: number, tol: number): string | null {
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
    return "Bounds must be finite numbers.";
  }
  if (!(lo < hi)) {
    return "The lower bound must be strictly below the upper bound.";
  }
  if (!Number.isFinite(tol) || !(tol > 0) || !(tol < 1)) {
    return "Tolerance must be strictly between 0 and 1.";
  }
  return null;
}

/** Answer buttons are live only while a question is on screen. */
export function canAnswer(state: ViewState): boolean {
  return state.phase === "asking" && state.query !== null;
}

function questionBanner(state: ViewState): string {
  const asked = state.history.length + 1;
  return state.queryBudget === null
    ? `Question ${asked}`
    : `Question ${asked} of about ${state.queryBudget}`;
}

function failureBanner(failure: FailureDto | null): string {
  if (failure === null) {
    return "Session failed.";
  }
  const ids = failure.conflicting_query_ids;
  const where = ids.length > 0 ? ` (answers ${ids.join(", ")})` : "";
  return `Session failed: ${failure.detail}${where}`;
}

export function beginCreate(): ViewState {
  return {
    ...initialState(),
    phase: "creating",
    banner: "Starting session...",
  };
}

export function applyCreated(
  state: ViewState,
  response: CreateSessionResponse,
): ViewState {
  const next: ViewState = {
    ...state,
    sessionId: response.session_id,
    queryBudget: response.query_budget,
    query: response.first_query,
    history: [],
    failure: response.failure ?? null,
    errorDetail: null,
  };
  if (response.status === "Failed") {
    return { ...next, phase: "failed", query: null, banner: failureBanner(next.failure) };
  }
  return { ...next, phase: "asking", banner: questionBanner(next) };
}

export function beginSubmit(state: ViewState): ViewState {
  return { ...state, phase: "submitting", banner: "Submitting answer..." };
}

export function applyAnswered(
  state: ViewState,
  answered: QueryDto,
  choice: Choice,
  response: AnswerResponse,
): ViewState {
  const record: AnswerRecord = {
    queryId: answered.id,
    kind: answered.kind,
    sentence: answered.prompt_data.sentence,
    choice,
    symbol: choiceToSymbol(choice),
  };
  const next: ViewState = {
    ...state,
    history: [...state.history, record],
    query: response.next_query,
    failure: response.failure ?? null,
    errorDetail: null,
  };
  if (response.status === "Complete") {
    return { ...next, phase: "complete", banner: "Session complete. Final curve below." };
  }
  if (response.status === "Failed") {
    return { ...next, phase: "failed", query: null, banner: failureBanner(next.failure) };
  }
  return { ...next, phase: "asking", banner: questionBanner(next) };
}

/** Store fetched knots for charting; values pass through untouched. */
export function applyUtility(state: ViewState, dto: UtilityDto): ViewState {
  return { ...state, knots: dto.knots, resolution: dto.resolution };
}

/** Service trouble: keep the session id around so the user can retry. */
export function applyError(state: ViewState, detail: string): ViewState {
  return {
    ...state,
    phase: "error",
    errorDetail: detail,
    banner: `Service error: ${detail}`,
  };
}

/** Back from an error banner to the pending question, if any. */
export function resumeAsking(state: ViewState, query: QueryDto): ViewState {
  const next: ViewState = { ...state, query, errorDetail: null };
  return { ...next, phase: "asking", banner: questionBanner(next) };
}

export interface PromptCard {
  title: string;
  body: string;
}

/**
 * Project a query onto the two choice cards: plain alternatives for a
 * Binary query, "gain X instead of Y" prospects for a Difference query.
 */
export function promptCards(query: QueryDto): [PromptCard, PromptCard] {
  if (query.kind === "Binary") {
    const d = query.prompt_data;
    return [
      { title: "First", body: d.left_label },
      { title: "Second", body: d.right_label },
    ];
  }
  const d = query.prompt_data;
  return [
    { title: "First", body: `gain ${d.first_gain_label} instead of ${d.first_base_label}` },
    { title: "Second", body: `gain ${d.second_gain_label} instead of ${d.second_base_label}` },
  ];
}

/** CSV text for the download link; formats fetched knots, nothing more. */
export function knotsToCsv(knots: Knot[]): string {
  const rows = knots.map(([param, utility]) => `${param},${utility}`);
  return ["param,utility", ...rows, ""].join("\n");
}
