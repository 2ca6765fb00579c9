/**
 * Wire types for the elicitation service JSON/HTTP protocol.
 *
 * The UI is a pure projection of these payloads; it never computes
 * utility values itself.
 */

export type AnswerSymbol = "<" | "=" | ">";

export type SessionStatus = "AwaitingAnswer" | "Complete" | "Failed";

export interface BinaryPromptData {
  left: number;
  right: number;
  left_label: string;
  right_label: string;
  sentence: string;
}

export interface DifferencePromptData {
  first_gain: number;
  first_base: number;
  second_gain: number;
  second_base: number;
  first_gain_label: string;
  first_base_label: string;
  second_gain_label: string;
  second_base_label: string;
  sentence: string;
}

export interface BinaryQueryDto {
  id: number;
  kind: "Binary";
  prompt_data: BinaryPromptData;
}

export interface DifferenceQueryDto {
  id: number;
  kind: "Difference";
  prompt_data: DifferencePromptData;
}

export type QueryDto = BinaryQueryDto | DifferenceQueryDto;

export interface FailureDto {
  error: string;
  detail: string;
  conflicting_query_ids: number[];
}

export interface SessionConfigDto {
  lo?: number;
  hi?: number;
  a0?: number;
  a1?: number;
  tol?: number;
  label_format?: string;
  p_limit?: number;
}

export interface CreateSessionResponse {
  session_id: string;
  status: SessionStatus;
  query_budget: number;
  first_query: QueryDto | null;
  failure?: FailureDto;
}

export interface AnswerResponse {
  status: SessionStatus;
  next_query: QueryDto | null;
  failure?: FailureDto;
}

/** Knot as [param, utility]. */
export type Knot = [number, number];

export interface UtilityDto {
  anchors: [number, number];
  resolution: number;
  knots: Knot[];
  interpolation: string;
  truncated_below: boolean;
  truncated_above: boolean;
}

export interface LogEntryDto {
  query: QueryDto;
  answer: AnswerSymbol;
}

export interface SessionLogDto {
  session_id: string;
  status: SessionStatus;
  config: Required<SessionConfigDto>;
  entries: LogEntryDto[];
  warnings: string[];
  failure: FailureDto | null;
}

export interface ErrorEnvelope {
  error: string;
  detail: string;
}
