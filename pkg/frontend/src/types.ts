/** Payload shapes of the session service, mirrored verbatim.
 *
 * Exact quantities travel as rational strings (`opt_cost`, weights); entropy
 * is the one float, under `entropy_bits`.  A question always carries `render`
 * and `kind`, plus an `elements` list whenever the set is small enough to
 * show as chips.
 */

export type QuestionView = {
  render: string;
  kind: "equality" | "comparison" | "entrywise" | "cone" | "cyclic" | "explicit";
  elements?: number[];
  element?: number;
  coordinate?: number;
  relation?: "eq" | "lt";
  value?: number;
  width?: number;
  superset_side?: boolean;
  free?: number[];
  start?: number | null;
  end?: number | null;
  added?: number[];
  removed?: number[];
  members?: number[];
};

export type SessionStatus = "awaiting-answer" | "done";

/** What changes on every answer. */
export type TurnView = {
  status: SessionStatus;
  asked: number;
  question: QuestionView | null;
  result: number | null;
};

/** The create response: turn state plus the per-game constants. */
export type SessionView = TurnView & {
  id: string;
  n: number;
  strategy: string;
  entropy_bits: number;
  opt_cost: string;
};

/** GET /api/session/{id}: everything, for restoring a game mid-flight. */
export type FullView = SessionView & {
  distribution: { n: number; weights: string[] };
  history: { question: QuestionView; answer: boolean }[];
  candidates: number[];
};

export type StrategyInfo = {
  kind: string;
  description: string;
  params: Record<string, string>;
};

/** What POST /api/session accepts under "strategy". */
export type StrategyDescriptor = {
  kind: string;
  t?: string;
  r?: number;
  k?: number;
  seed?: number;
};

export type ErrorBody = { error: string; detail: string };
