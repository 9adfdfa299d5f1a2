/**
 * Expected CSV layout per figure name, mirroring the generator's
 * external interface: line figures carry a sweep column plus one column
 * per family curve; grid figures are long-format with a validity flag.
 * Improvement metrics get the zero-centered diverging palette.
 */

export type FigStyle = "line" | "heatmap" | "surface";

export interface FigureSchema {
  name: string;
  style: FigStyle;
  /** sweep column (line) or first grid axis */
  x: string;
  /** second grid axis (grid figures only) */
  y?: string;
  /** metric column (grid figures; line figures use all non-x columns) */
  value?: string;
  /** constant reference column for surfaces with a no-squeezing plane */
  reference?: string;
  /** zero-centered palette */
  diverging: boolean;
}

function line(name: string): FigureSchema {
  return { name, style: "line", x: "tau", diverging: false };
}

function grid(
  name: string,
  style: FigStyle,
  x: string,
  y: string,
  value: string,
  opts: { reference?: string; diverging?: boolean } = {},
): FigureSchema {
  return {
    name, style, x, y, value,
    reference: opts.reference,
    diverging: opts.diverging ?? false,
  };
}

export const SCHEMAS: Record<string, FigureSchema> = Object.fromEntries(
  [
    line("fig2a"), line("fig2b"), line("fig2c"), line("fig3a"),
    grid("fig3b", "surface", "phi_sq", "r", "f_phi",
      { reference: "f_phi_r0" }),
    grid("fig4a", "heatmap", "phi_sq", "phi", "f_phi_imp",
      { diverging: true }),
    grid("fig4b", "heatmap", "phi_sq", "phi", "f_phi_imp",
      { diverging: true }),
    grid("fig5a", "heatmap", "phi_sq", "mu", "f_phi_imp",
      { diverging: true }),
    grid("fig5b", "heatmap", "phi_sq", "mu", "f_phi_imp",
      { diverging: true }),
    line("fig6a"), line("fig6b"), line("fig6c"), line("fig7a"),
    grid("fig7b", "surface", "phi_sq", "r", "f_mu", { reference: "f_mu_r0" }),
    grid("fig8a", "heatmap", "phi_sq", "phi", "f_mu_imp",
      { diverging: true }),
    grid("fig8b", "heatmap", "phi_sq", "phi", "f_mu_imp",
      { diverging: true }),
    grid("fig9", "heatmap", "phi", "mu", "f_mu_imp", { diverging: true }),
    line("fig10a"), line("fig10b"),
    grid("fig11a", "heatmap", "phi", "phi_sq", "inv_delta_sim"),
    grid("fig11b", "heatmap", "phi", "phi_sq", "inv_delta_sim"),
    grid("fig12a", "heatmap", "phi", "phi_sq", "ratio_r"),
    grid("fig12b", "heatmap", "phi", "phi_sq", "ratio_r"),
  ].map((s) => [s.name, s]),
);

export const FIGURE_NAMES = Object.keys(SCHEMAS);

export function requiredColumns(schema: FigureSchema): string[] {
  if (schema.style === "line") {
    return [schema.x];
  }
  const cols = [schema.x, schema.y!, schema.value!, "valid"];
  if (schema.reference) cols.push(schema.reference);
  return cols;
}
