import { Api, ApiError } from "./api.js";
import type {
  QuestionView,
  SessionView,
  StrategyDescriptor,
  TurnView,
} from "./types.js";

/** Where the single active game stands.
 *
 * "inconsistent" is the dead end reached when the server rejects an answer
 * as contradicting the earlier ones (409); the only way out is a restart.
 */
export type Phase = "idle" | "awaiting-answer" | "done" | "inconsistent";

export type HistoryEntry = { render: string; answer: boolean };

/** Everything the page renders.
 *
 * The gauges (`entropyBits`, `optCost`) are echoed server fields, never
 * client math, and `history.length` equals `asked` at all times.
 */
export type UiSessionView = {
  phase: Phase;
  busy: boolean;
  id: string | null;
  n: number | null;
  strategy: string | null;
  entropyBits: number | null;
  optCost: string | null;
  asked: number;
  question: QuestionView | null;
  history: HistoryEntry[];
  result: number | null;
  error: string | null;
};

export function idleView(): UiSessionView {
  return {
    phase: "idle",
    busy: false,
    id: null,
    n: null,
    strategy: null,
    entropyBits: null,
    optCost: null,
    asked: 0,
    question: null,
    history: [],
    result: null,
    error: null,
  };
}

/** Chip rendering caps the setup form, not the server. */
export const MAX_ELEMENTS = 64;

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.detail}`;
  return err instanceof Error ? err.message : String(err);
}

/** One game at a time: start, answer, restore after a refresh, restart.
 *
 * Each answer awaits the server round-trip (`busy` masks the buttons in the
 * meantime); there is no optimistic state to roll back.
 */
export class GameController {
  private view: UiSessionView = idleView();
  private listeners: ((view: UiSessionView) => void)[] = [];

  constructor(private api: Api) {}

  current(): UiSessionView {
    return this.view;
  }

  subscribe(listener: (view: UiSessionView) => void): () => void {
    this.listeners.push(listener);
    listener(this.view);
    return () => {
      this.listeners = this.listeners.filter((fn) => fn !== listener);
    };
  }

  private patch(changes: Partial<UiSessionView>): void {
    this.view = { ...this.view, ...changes };
    for (const listener of this.listeners) listener(this.view);
  }

  private sessionPatch(session: SessionView): Partial<UiSessionView> {
    return {
      phase: session.status === "done" ? "done" : "awaiting-answer",
      busy: false,
      id: session.id,
      n: session.n,
      strategy: session.strategy,
      entropyBits: session.entropy_bits,
      optCost: session.opt_cost,
      asked: session.asked,
      question: session.question,
      result: session.result,
      error: null,
    };
  }

  async start(weights: string[], strategy: StrategyDescriptor): Promise<void> {
    if (this.view.busy) return;
    if (weights.length === 0) {
      this.patch({ error: "enter at least one weight" });
      return;
    }
    if (weights.length > MAX_ELEMENTS) {
      this.patch({
        error: `at most ${MAX_ELEMENTS} elements can be rendered as chips`,
      });
      return;
    }
    this.patch({ busy: true, error: null });
    try {
      const session = await this.api.createSession(weights, strategy);
      this.view = idleView();
      this.patch(this.sessionPatch(session));
    } catch (err) {
      this.patch({ busy: false, error: describe(err) });
    }
  }

  async answer(bit: boolean): Promise<void> {
    const before = this.view;
    if (before.phase !== "awaiting-answer" || before.busy) return;
    const pending = before.question;
    if (before.id === null || pending === null) return;
    this.patch({ busy: true, error: null });
    try {
      const turn: TurnView = await this.api.postAnswer(before.id, bit);
      this.patch({
        phase: turn.status === "done" ? "done" : "awaiting-answer",
        busy: false,
        asked: turn.asked,
        question: turn.question,
        result: turn.result,
        history: [...before.history, { render: pending.render, answer: bit }],
      });
    } catch (err) {
      if (err instanceof ApiError && err.code === "InconsistentAnswers") {
        this.patch({ phase: "inconsistent", busy: false, error: err.detail });
      } else {
        this.patch({ busy: false, error: describe(err) });
      }
    }
  }

  /** Rebuild the whole view from GET /api/session/{id} (refresh mid-game). */
  async restore(sessionId: string): Promise<void> {
    this.patch({ busy: true, error: null });
    try {
      const full = await this.api.getSession(sessionId);
      this.view = idleView();
      this.patch({
        ...this.sessionPatch(full),
        history: full.history.map((entry) => ({
          render: entry.question.render,
          answer: entry.answer,
        })),
      });
    } catch (err) {
      this.view = idleView();
      this.patch({ error: describe(err) });
    }
  }

  restart(): void {
    this.view = idleView();
    this.patch({});
  }
}
