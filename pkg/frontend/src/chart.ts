/**
 * Multi-panel line chart, rendered as standalone SVG.
 *
 * Rendering is a pure function of the parsed tables: no clocks, no
 * randomness, so identical input produces an identical document.
 */

import { RadiusRow } from "./csv.js";

export interface Series {
  method: string;
  points: { n: number; y: number }[];
}

export interface Panel {
  title: string;
  series: Series[];
}

export interface PlotSpec {
  panels: Panel[];
  logX: boolean;
  logY: boolean;
}

const COLORS: Record<string, string> = {
  hoeffding: "#d62728",
  oracle_bernstein: "#2ca02c",
  empirical_bernstein: "#1f77b4",
};
const FALLBACK_COLORS = ["#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

export function buildPlotSpec(
  inputs: { title: string; rows: RadiusRow[] }[],
  logX = false,
  logY = false,
): PlotSpec {
  const panels = inputs.map(({ title, rows }) => {
    const byMethod = new Map<string, Series>();
    for (const row of rows) {
      if (!byMethod.has(row.method)) {
        byMethod.set(row.method, { method: row.method, points: [] });
      }
      byMethod.get(row.method)!.points.push({ n: row.n, y: row.mean_radius });
    }
    const series = [...byMethod.values()];
    for (const s of series) {
      s.points.sort((a, b) => a.n - b.n);
    }
    return { title, series };
  });
  return { panels, logX, logY };
}

const PANEL_W = 380;
const PANEL_H = 300;
const MARGIN = { top: 34, right: 16, bottom: 40, left: 58 };

function colorFor(method: string, i: number): string {
  return COLORS[method] ?? FALLBACK_COLORS[i % FALLBACK_COLORS.length];
}

function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0);
  }
  return String(Number(v.toPrecision(4)));
}

interface Scale {
  (v: number): number;
  ticks: number[];
}

function makeScale(lo: number, hi: number, out0: number, out1: number, log: boolean): Scale {
  if (log) {
    const llo = Math.log10(lo);
    const lhi = Math.log10(hi);
    const span = lhi - llo || 1;
    const f = ((v: number) => out0 + ((Math.log10(v) - llo) / span) * (out1 - out0)) as Scale;
    const ticks: number[] = [];
    for (let e = Math.ceil(llo); e <= Math.floor(lhi); e++) {
      ticks.push(10 ** e);
    }
    f.ticks = ticks.length >= 2 ? ticks : [lo, hi];
    return f;
  }
  const span = hi - lo || 1;
  const f = ((v: number) => out0 + ((v - lo) / span) * (out1 - out0)) as Scale;
  const step = span / 4;
  f.ticks = [0, 1, 2, 3, 4].map((k) => lo + k * step);
  return f;
}

function renderPanel(panel: Panel, index: number, spec: PlotSpec): string {
  const x0 = index * PANEL_W;
  const innerX0 = x0 + MARGIN.left;
  const innerX1 = x0 + PANEL_W - MARGIN.right;
  const innerY0 = PANEL_H - MARGIN.bottom;
  const innerY1 = MARGIN.top;
  const ns = panel.series.flatMap((s) => s.points.map((p) => p.n));
  const ys = panel.series.flatMap((s) => s.points.map((p) => p.y));
  const xScale = makeScale(Math.min(...ns), Math.max(...ns), innerX0, innerX1, spec.logX);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const pad = spec.logY ? 1 : 0.05 * (yHi - yLo || 1);
  const yScale = spec.logY
    ? makeScale(yLo / 1.1, yHi * 1.1, innerY0, innerY1, true)
    : makeScale(Math.max(yLo - pad, 0), yHi + pad, innerY0, innerY1, false);

  const parts: string[] = [`<g class="panel" data-title="${panel.title}">`];
  parts.push(
    `<text x="${x0 + PANEL_W / 2}" y="18" text-anchor="middle" class="title">${panel.title}</text>`,
  );
  parts.push(
    `<rect x="${innerX0}" y="${innerY1}" width="${innerX1 - innerX0}" height="${innerY0 - innerY1}" fill="none" stroke="#333"/>`,
  );
  for (const t of xScale.ticks) {
    const px = xScale(t);
    parts.push(`<line x1="${px}" y1="${innerY0}" x2="${px}" y2="${innerY0 + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${innerY0 + 16}" text-anchor="middle" class="tick">${fmtTick(t)}</text>`,
    );
  }
  for (const t of yScale.ticks) {
    const py = yScale(t);
    parts.push(`<line x1="${innerX0 - 4}" y1="${py}" x2="${innerX0}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${innerX0 - 7}" y="${py + 3}" text-anchor="end" class="tick">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(innerX0 + innerX1) / 2}" y="${PANEL_H - 8}" text-anchor="middle" class="label">n</text>`,
  );
  panel.series.forEach((s, i) => {
    const pts = s.points.map((p) => `${xScale(p.n).toFixed(2)},${yScale(p.y).toFixed(2)}`);
    parts.push(
      `<polyline class="series" data-method="${s.method}" points="${pts.join(" ")}" fill="none" stroke="${colorFor(s.method, i)}" stroke-width="1.8"/>`,
    );
  });
  // legend
  panel.series.forEach((s, i) => {
    const ly = innerY1 + 14 + i * 16;
    parts.push(
      `<line x1="${innerX1 - 150}" y1="${ly}" x2="${innerX1 - 126}" y2="${ly}" stroke="${colorFor(s.method, i)}" stroke-width="1.8"/>`,
    );
    parts.push(`<text x="${innerX1 - 120}" y="${ly + 4}" class="legend">${s.method}</text>`);
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function renderSvg(spec: PlotSpec): string {
  const width = PANEL_W * spec.panels.length;
  const head =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_H}" ` +
    `viewBox="0 0 ${width} ${PANEL_H}" font-family="sans-serif">\n` +
    `<style>.title{font-size:13px}.tick{font-size:10px}.label{font-size:11px}.legend{font-size:10px}</style>`;
  const body = spec.panels.map((p, i) => renderPanel(p, i, spec)).join("\n");
  return `${head}\n${body}\n</svg>\n`;
}
