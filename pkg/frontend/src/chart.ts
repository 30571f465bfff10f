/**
 * Dependency-free SVG line charts: one curve per value column, axes with
 * nice tick values, a legend naming every curve, and optional horizontal
 * reference lines. Output is deterministic for identical inputs.
 */

import { Table } from "./csv";

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** y values at which to draw dashed reference lines */
  refLines?: number[];
}

const DEFAULTS = {
  width: 860,
  height: 480,
  margin: { top: 44, right: 170, bottom: 56, left: 72 },
};

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

interface Scale {
  (value: number): number;
  ticks: number[];
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const raw = (hi - lo) / Math.max(1, count);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= raw) {
      step = mult * power;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (hi === lo) {
    hi = lo + 1;
  }
  const f = ((value: number) =>
    outLo + ((value - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  f.ticks = niceTicks(lo, hi, 6);
  return f;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Render a multi-curve line chart for a parsed table. */
export function lineChartSvg(table: Table, options: ChartOptions = {}): string {
  const width = options.width ?? DEFAULTS.width;
  const height = options.height ?? DEFAULTS.height;
  const m = DEFAULTS.margin;
  const innerW = width - m.left - m.right;
  const innerH = height - m.top - m.bottom;

  const xName = table.columns[0];
  const seriesNames = table.columns.slice(1);
  const xs = table.rows.map((row) => row[0]);
  const allY = table.rows.flatMap((row) => row.slice(1)).concat(options.refLines ?? []);

  const x = linearScale(Math.min(...xs), Math.max(...xs), m.left, m.left + innerW);
  const yLo = Math.min(...allY);
  const yHi = Math.max(...allY);
  const pad = 0.04 * (yHi - yLo || 1);
  const y = linearScale(yLo - pad, yHi + pad, m.top + innerH, m.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="13">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (options.title) {
    parts.push(
      `<text x="${m.left + innerW / 2}" y="24" text-anchor="middle" ` +
        `font-size="16">${esc(options.title)}</text>`,
    );
  }

  // grid and axes
  for (const tick of y.ticks) {
    const py = y(tick);
    parts.push(
      `<line x1="${m.left}" y1="${py.toFixed(2)}" x2="${m.left + innerW}" ` +
        `y2="${py.toFixed(2)}" stroke="#e0e0e0"/>`,
    );
    parts.push(
      `<text x="${m.left - 8}" y="${(py + 4).toFixed(2)}" text-anchor="end">` +
        `${fmtTick(tick)}</text>`,
    );
  }
  for (const tick of x.ticks) {
    const px = x(tick);
    parts.push(
      `<line x1="${px.toFixed(2)}" y1="${m.top + innerH}" x2="${px.toFixed(2)}" ` +
        `y2="${m.top + innerH + 5}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${px.toFixed(2)}" y="${m.top + innerH + 20}" text-anchor="middle">` +
        `${fmtTick(tick)}</text>`,
    );
  }
  parts.push(
    `<line x1="${m.left}" y1="${m.top + innerH}" x2="${m.left + innerW}" ` +
      `y2="${m.top + innerH}" stroke="#333"/>`,
  );
  parts.push(`<line x1="${m.left}" y1="${m.top}" x2="${m.left}" y2="${m.top + innerH}" stroke="#333"/>`);
  parts.push(
    `<text x="${m.left + innerW / 2}" y="${height - 12}" text-anchor="middle">` +
      `${esc(options.xLabel ?? xName)}</text>`,
  );
  parts.push(
    `<text x="20" y="${m.top + innerH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${m.top + innerH / 2})">${esc(options.yLabel ?? "value")}</text>`,
  );

  // reference lines
  for (const ref of options.refLines ?? []) {
    const py = y(ref);
    parts.push(
      `<line x1="${m.left}" y1="${py.toFixed(2)}" x2="${m.left + innerW}" ` +
        `y2="${py.toFixed(2)}" stroke="#555" stroke-dasharray="6 4" class="ref-line"/>`,
    );
    parts.push(
      `<text x="${m.left + innerW - 4}" y="${(py - 6).toFixed(2)}" text-anchor="end" ` +
        `fill="#555">y = ${fmtTick(ref)}</text>`,
    );
  }

  // curves
  seriesNames.forEach((name, si) => {
    const color = PALETTE[si % PALETTE.length];
    const points = table.rows
      .map((row, i) => `${x(xs[i]).toFixed(2)},${y(row[si + 1]).toFixed(2)}`)
      .join(" L");
    parts.push(
      `<path d="M${points}" fill="none" stroke="${color}" stroke-width="1.8" ` +
        `class="curve" data-name="${esc(name)}"/>`,
    );
  });

  // legend
  seriesNames.forEach((name, si) => {
    const color = PALETTE[si % PALETTE.length];
    const ly = m.top + 10 + si * 22;
    const lx = m.left + innerW + 16;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" stroke="${color}" stroke-width="2.5"/>`,
    );
    parts.push(
      `<text x="${lx + 34}" y="${ly + 4}" class="legend-label">${esc(name)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
