/** Canned distributions for the setup form.
 *
 * Weights are exact rational strings passed to the server as-is; the Zipf
 * list is frozen from the core library's generator so the client never does
 * probability arithmetic.
 */

export type Preset = { label: string; weights: string[] };

export const PRESETS: Record<string, Preset> = {
  textbook: {
    label: "Textbook (1/2, 1/4, 1/4)",
    weights: ["1/2", "1/4", "1/4"],
  },
  uniform8: {
    label: "Uniform-8",
    weights: Array(8).fill("1/8"),
  },
  zipf16: {
    label: "Zipf-16",
    weights: [
      "720720/2436559",
      "360360/2436559",
      "240240/2436559",
      "180180/2436559",
      "144144/2436559",
      "120120/2436559",
      "102960/2436559",
      "90090/2436559",
      "80080/2436559",
      "72072/2436559",
      "65520/2436559",
      "60060/2436559",
      "55440/2436559",
      "51480/2436559",
      "48048/2436559",
      "45045/2436559",
    ],
  },
};

/** Split a hand-typed weights line into tokens; the server validates values. */
export function parseWeights(text: string): string[] {
  return text
    .split(/[\s,]+/)
    .map((token) => token.trim())
    .filter((token) => token.length > 0);
}
