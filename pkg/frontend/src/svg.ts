/**
 * Minimal line-chart SVG writer: one polyline per series, optional log axes,
 * legend labelled with the series names.  No chart library — the output is a
 * small standalone vector file.
 */

import { DataError } from "./csv.js";
import { Series } from "./aggregate.js";

export interface ChartSpec {
  series: Series[];
  xLabel: string;
  yLabel: string;
  logx: boolean;
  logy: boolean;
  title?: string;
}

const W = 640;
const H = 420;
const ML = 70;
const MR = 24;
const MT = 40;
const MB = 56;

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("e+", "e");
  return Number(v.toPrecision(3)).toString();
}

function ticks(min: number, max: number, log: boolean): number[] {
  if (log) {
    const out: number[] = [];
    for (let e = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, e) <= max * (1 + 1e-9); e++) {
      out.push(Math.pow(10, e));
    }
    return out.length >= 2 ? out : [min, max];
  }
  const range = max - min || 1;
  const rough = range / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) out.push(v);
  return out;
}

export function renderChart(spec: ChartSpec): string {
  const pts = spec.series.flatMap((s) => s.points);
  if (pts.length === 0) throw new DataError("nothing to plot");
  for (const axis of ["x", "y"] as const) {
    const log = axis === "x" ? spec.logx : spec.logy;
    if (log && pts.some((p) => p[axis] <= 0)) {
      throw new DataError(`log ${axis}-axis requires positive ${axis} values`);
    }
  }

  const tx = (v: number) => (spec.logx ? Math.log10(v) : v);
  const ty = (v: number) => (spec.logy ? Math.log10(v) : v);
  let xMin = Math.min(...pts.map((p) => p.x));
  let xMax = Math.max(...pts.map((p) => p.x));
  let yMin = Math.min(...pts.map((p) => p.y));
  let yMax = Math.max(...pts.map((p) => p.y));
  if (xMin === xMax) [xMin, xMax] = [xMin - (Math.abs(xMin) || 1) * 0.5, xMax + (Math.abs(xMax) || 1) * 0.5];
  if (yMin === yMax) [yMin, yMax] = [yMin - (Math.abs(yMin) || 1) * 0.5, yMax + (Math.abs(yMax) || 1) * 0.5];

  const pw = W - ML - MR;
  const ph = H - MT - MB;
  const xOf = (v: number) => ML + ((tx(v) - tx(xMin)) / (tx(xMax) - tx(xMin))) * pw;
  const yOf = (v: number) => MT + ph - ((ty(v) - ty(yMin)) / (ty(yMax) - ty(yMin))) * ph;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  if (spec.title) {
    s += `<text x="${ML}" y="${MT - 16}" font-size="13" font-weight="600" fill="#222">${esc(spec.title)}</text>\n`;
  }

  // grid + axis ticks
  for (const v of ticks(yMin, yMax, spec.logy)) {
    const y = yOf(v);
    s += `<line x1="${ML}" y1="${y.toFixed(1)}" x2="${ML + pw}" y2="${y.toFixed(1)}" stroke="#eee"/>\n`;
    s += `<text x="${ML - 6}" y="${(y + 3).toFixed(1)}" text-anchor="end" font-size="10" fill="#555">${esc(fmtTick(v))}</text>\n`;
  }
  for (const v of ticks(xMin, xMax, spec.logx)) {
    const x = xOf(v);
    s += `<line x1="${x.toFixed(1)}" y1="${MT + ph}" x2="${x.toFixed(1)}" y2="${MT + ph + 4}" stroke="#333"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${MT + ph + 16}" text-anchor="middle" font-size="10" fill="#555">${esc(fmtTick(v))}</text>\n`;
  }

  // axes frame
  s += `<line x1="${ML}" y1="${MT}" x2="${ML}" y2="${MT + ph}" stroke="#333"/>\n`;
  s += `<line x1="${ML}" y1="${MT + ph}" x2="${ML + pw}" y2="${MT + ph}" stroke="#333"/>\n`;
  s += `<text x="${ML + pw / 2}" y="${H - 14}" text-anchor="middle" font-size="12" fill="#333">${esc(spec.xLabel)}</text>\n`;
  s += `<text x="18" y="${MT + ph / 2}" text-anchor="middle" font-size="12" fill="#333" transform="rotate(-90,18,${MT + ph / 2})">${esc(spec.yLabel)}</text>\n`;

  // one line + markers per series
  spec.series.forEach((sr, i) => {
    const color = COLORS[i % COLORS.length];
    const coords = sr.points.map((p) => `${xOf(p.x).toFixed(1)},${yOf(p.y).toFixed(1)}`);
    s += `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${coords.join(" ")}"/>\n`;
    for (const c of coords) {
      const [cx, cy] = c.split(",");
      s += `<circle cx="${cx}" cy="${cy}" r="2.5" fill="${color}"/>\n`;
    }
  });

  // legend
  const legendW = Math.max(...spec.series.map((sr) => sr.label.length)) * 7 + 34;
  const legendH = spec.series.length * 16 + 8;
  const lx = ML + pw - legendW - 6;
  const ly = MT + 6;
  s += `<rect x="${lx}" y="${ly}" width="${legendW}" height="${legendH}" rx="3" fill="#fff" fill-opacity="0.9" stroke="#ccc"/>\n`;
  spec.series.forEach((sr, i) => {
    const color = COLORS[i % COLORS.length];
    const yy = ly + 14 + i * 16;
    s += `<line x1="${lx + 8}" y1="${yy - 4}" x2="${lx + 24}" y2="${yy - 4}" stroke="${color}" stroke-width="1.5"/>\n`;
    s += `<text x="${lx + 30}" y="${yy}" font-size="11" fill="#333">${esc(sr.label)}</text>\n`;
  });

  s += `</svg>\n`;
  return s;
}
