// Color-blind-safe palette (Okabe-Ito), keyed by color id. Shapes carry
// the same information redundantly, so the board stays playable even if
// two generated hues end up close.

const OKABE_ITO = [
  "#e69f00",
  "#56b4e9",
  "#009e73",
  "#f0e442",
  "#0072b2",
  "#d55e00",
  "#cc79a7",
  "#999999",
];

export function colorFor(colorId: number): string {
  const base = OKABE_ITO[(colorId - 1) % OKABE_ITO.length];
  if (colorId <= OKABE_ITO.length) return base!;
  // Past the named palette: spread hues with the golden angle.
  const hue = Math.round((colorId * 137.508) % 360);
  return `hsl(${hue} 65% 45%)`;
}
