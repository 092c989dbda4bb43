import { describe, expect, it } from "vitest";
import { idleView, type UiSessionView } from "../src/controller.js";
import { elementName, formatBits, rationalToDecimal, render } from "../src/ui.js";
import { hidden, loadPage, text } from "./page.js";

function awaitingView(): UiSessionView {
  return {
    ...idleView(),
    phase: "awaiting-answer",
    id: "abc123",
    n: 3,
    strategy: "cone",
    entropyBits: 1.5,
    optCost: "3/2",
    asked: 0,
    question: {
      render: "Is x one of {x_1, x_2}?",
      kind: "cone",
      superset_side: true,
      free: [2],
      elements: [1, 2],
    },
  };
}

describe("formatting", () => {
  it("names elements 1-based", () => {
    expect(elementName(3)).toBe("x_3");
  });

  it("trims float gauges to four decimals", () => {
    expect(formatBits(1.5)).toBe("1.5");
    expect(formatBits(2.5)).toBe("2.5");
    expect(formatBits(3.4032202474706916)).toBe("3.4032");
    expect(formatBits(2)).toBe("2");
  });

  it("reads rational strings as decimals", () => {
    expect(rationalToDecimal("3/2")).toBe("1.5");
    expect(rationalToDecimal("19/10")).toBe("1.9");
    expect(rationalToDecimal("7/4")).toBe("1.75");
    expect(rationalToDecimal("2")).toBe("2");
  });
});

describe("rendering a pending question", () => {
  it("shows the question, chips, and gauges", () => {
    const { document } = loadPage();
    render(document, awaitingView());
    expect(hidden(document, "setup")).toBe(true);
    expect(hidden(document, "game")).toBe(false);
    expect(hidden(document, "question")).toBe(false);
    expect(text(document, "question-render")).toBe("Is x one of {x_1, x_2}?");
    const chips = document.querySelectorAll("#question-chips .chip");
    expect([...chips].map((chip) => chip.textContent)).toEqual(["x_1", "x_2"]);
    expect(text(document, "gauge-asked")).toBe("asked 0");
    expect(text(document, "gauge-entropy")).toBe("H(π) = 1.5 bits");
    expect(text(document, "gauge-hplus1")).toBe("H(π)+1 = 2.5");
    expect(text(document, "gauge-opt")).toBe("Opt(π) = 3/2 = 1.5");
    expect(text(document, "strategy-label")).toBe("strategy cone · n = 3");
    expect(hidden(document, "result")).toBe(true);
    expect(hidden(document, "banner")).toBe(true);
    expect(hidden(document, "restart")).toBe(true);
  });

  it("falls back to the descriptor when the set has no chip list", () => {
    const { document } = loadPage();
    const view = awaitingView();
    view.question = {
      render: "Is x in a given set of 40 elements?",
      kind: "explicit",
    };
    render(document, view);
    expect(text(document, "question-render")).toContain("40 elements");
    expect(document.querySelectorAll("#question-chips .chip")).toHaveLength(0);
  });

  it("masks the answer buttons while a round trip is in flight", () => {
    const { document } = loadPage();
    const view = awaitingView();
    view.busy = true;
    render(document, view);
    const yes = document.getElementById("answer-yes") as HTMLButtonElement;
    const no = document.getElementById("answer-no") as HTMLButtonElement;
    expect(yes.disabled).toBe(true);
    expect(no.disabled).toBe(true);
  });
});

describe("rendering the end states", () => {
  it("announces the found element against both gauges", () => {
    const { document } = loadPage();
    const view = awaitingView();
    view.phase = "done";
    view.asked = 2;
    view.question = null;
    view.result = 3;
    view.history = [
      { render: "Is x one of {x_1}?", answer: false },
      { render: "Is x one of {x_1, x_2}?", answer: false },
    ];
    render(document, view);
    expect(hidden(document, "question")).toBe(true);
    expect(hidden(document, "result")).toBe(false);
    expect(text(document, "result")).toBe(
      "Your element is x_3, found in 2 questions against " +
        "Opt(π) = 1.5 and H(π)+1 = 2.5.",
    );
    expect(hidden(document, "restart")).toBe(false);
    const entries = [...document.querySelectorAll("#history li")];
    expect(entries.map((item) => item.textContent)).toEqual([
      "Is x one of {x_1}? — No",
      "Is x one of {x_1, x_2}? — No",
    ]);
  });

  it("uses the singular for a one-question game", () => {
    const { document } = loadPage();
    const view = awaitingView();
    view.phase = "done";
    view.asked = 1;
    view.question = null;
    view.result = 1;
    render(document, view);
    expect(text(document, "result")).toContain("found in 1 question against");
  });

  it("renders the inconsistent state as a banner with a restart", () => {
    const { document } = loadPage();
    const view = awaitingView();
    view.phase = "inconsistent";
    view.error = "the answers rule out every element";
    view.question = null;
    render(document, view);
    expect(hidden(document, "banner")).toBe(false);
    expect(text(document, "banner-text")).toContain("Inconsistent answers");
    expect(text(document, "banner-text")).toContain("rule out every element");
    expect(hidden(document, "restart")).toBe(false);
    expect(hidden(document, "question")).toBe(true);
    expect(hidden(document, "error")).toBe(true);
  });
});

describe("rendering setup errors", () => {
  it("keeps the form visible with the server detail inline", () => {
    const { document } = loadPage();
    const view = idleView();
    view.error = "BadDistribution: weights must sum to 1";
    render(document, view);
    expect(hidden(document, "setup")).toBe(false);
    expect(hidden(document, "game")).toBe(true);
    expect(hidden(document, "error")).toBe(false);
    expect(text(document, "error")).toContain("BadDistribution");
  });
});
