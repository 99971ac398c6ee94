/**
 * Self-contained SVG rendering of log-log scan panels.
 *
 * No plotting dependency: the figure is a deterministic string, which keeps
 * the renderer byte-reproducible and trivially testable.  Crosses mark the
 * series that keeps the imaginary part, circles the series that drops it;
 * each series carries its fitted slope both as visible text and as a
 * full-precision `data-slope` attribute.
 */

export interface SeriesSpec {
  name: string;
  points: ReadonlyArray<readonly [number, number]>;
  marker: "cross" | "circle";
  slope: number;
}

export interface PanelSpec {
  title: string;
  series: SeriesSpec[];
}

const PANEL_WIDTH = 430;
const PANEL_HEIGHT = 400;
const MARGIN = { left: 72, right: 16, top: 44, bottom: 58 };

function fmt(value: number): string {
  return value.toFixed(2);
}

function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(lo / Math.LN10); e * Math.LN10 <= hi + 1e-12; e += 1) {
    ticks.push(e);
  }
  return ticks;
}

class LogAxes {
  readonly x0: number;
  readonly y0: number;
  private readonly xLo: number;
  private readonly xHi: number;
  private readonly yLo: number;
  private readonly yHi: number;

  constructor(offsetX: number, points: ReadonlyArray<readonly [number, number]>) {
    this.x0 = offsetX + MARGIN.left;
    this.y0 = MARGIN.top;
    const lx = points.map(([x]) => Math.log(x));
    const ly = points.map(([, y]) => Math.log(y));
    const padX = 0.05 * (Math.max(...lx) - Math.min(...lx) || 1);
    const padY = 0.08 * (Math.max(...ly) - Math.min(...ly) || 1);
    this.xLo = Math.min(...lx) - padX;
    this.xHi = Math.max(...lx) + padX;
    this.yLo = Math.min(...ly) - padY;
    this.yHi = Math.max(...ly) + padY;
  }

  px(x: number): number {
    const w = PANEL_WIDTH - MARGIN.left - MARGIN.right;
    return this.x0 + ((Math.log(x) - this.xLo) / (this.xHi - this.xLo)) * w;
  }

  py(y: number): number {
    const h = PANEL_HEIGHT - MARGIN.top - MARGIN.bottom;
    return this.y0 + h - ((Math.log(y) - this.yLo) / (this.yHi - this.yLo)) * h;
  }

  xTicks(): number[] {
    return decadeTicks(this.xLo, this.xHi);
  }

  yTicks(): number[] {
    return decadeTicks(this.yLo, this.yHi);
  }
}

function markerGlyph(marker: "cross" | "circle", cx: number, cy: number): string {
  if (marker === "circle") {
    return `<circle class="marker-circle" cx="${fmt(cx)}" cy="${fmt(cy)}" r="3.6" fill="none" stroke="#1f4e9c" stroke-width="1.4"/>`;
  }
  const a = 3.4;
  return (
    `<path class="marker-cross" stroke="#b03030" stroke-width="1.4" d="` +
    `M ${fmt(cx - a)} ${fmt(cy - a)} L ${fmt(cx + a)} ${fmt(cy + a)} ` +
    `M ${fmt(cx - a)} ${fmt(cy + a)} L ${fmt(cx + a)} ${fmt(cy - a)}"/>`
  );
}

function renderSeries(axes: LogAxes, series: SeriesSpec, index: number): string {
  const coords = series.points.map(([x, y]) => [axes.px(x), axes.py(y)] as const);
  const path = coords.map(([x, y], i) => `${i === 0 ? "M" : "L"} ${fmt(x)} ${fmt(y)}`).join(" ");
  const color = series.marker === "circle" ? "#1f4e9c" : "#b03030";
  const pieces = [
    `<g class="series" data-name="${series.name}" data-marker="${series.marker}" data-slope="${series.slope}">`,
    `<path fill="none" stroke="${color}" stroke-width="0.9" stroke-opacity="0.55" d="${path}"/>`,
  ];
  for (const [cx, cy] of coords) {
    pieces.push(markerGlyph(series.marker, cx, cy));
  }
  const tx = axes.x0 + 10;
  const ty = axes.y0 + 16 + 16 * index;
  const glyph = markerGlyph(series.marker, tx, ty - 4);
  pieces.push(glyph);
  pieces.push(
    `<text class="slope-annotation" x="${fmt(tx + 10)}" y="${fmt(ty)}" font-size="12" fill="${color}">` +
      `${series.name}: slope ${series.slope.toFixed(4)}</text>`,
  );
  pieces.push("</g>");
  return pieces.join("\n");
}

function renderPanel(panel: PanelSpec, index: number): string {
  const offsetX = index * PANEL_WIDTH;
  const all = panel.series.flatMap((s) => s.points);
  if (all.length === 0) {
    throw new Error(`panel "${panel.title}" has no data`);
  }
  const axes = new LogAxes(offsetX, all);
  const left = offsetX + MARGIN.left;
  const right = offsetX + PANEL_WIDTH - MARGIN.right;
  const top = MARGIN.top;
  const bottom = PANEL_HEIGHT - MARGIN.bottom;
  const pieces = [
    `<g class="panel" data-title="${panel.title}">`,
    `<rect x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" fill="none" stroke="#333" stroke-width="1"/>`,
    `<text x="${(left + right) / 2}" y="${top - 14}" text-anchor="middle" font-size="14" fill="#111">${panel.title}</text>`,
    `<text x="${(left + right) / 2}" y="${PANEL_HEIGHT - 16}" text-anchor="middle" font-size="12" fill="#111">1 - r</text>`,
    `<text transform="translate(${offsetX + 18},${(top + bottom) / 2}) rotate(-90)" text-anchor="middle" font-size="12" fill="#111">Jtilde(r)</text>`,
  ];
  for (const e of axes.xTicks()) {
    const x = axes.px(Math.exp(e * Math.LN10));
    pieces.push(`<line x1="${fmt(x)}" y1="${bottom}" x2="${fmt(x)}" y2="${bottom + 5}" stroke="#333"/>`);
    pieces.push(
      `<text x="${fmt(x)}" y="${bottom + 20}" text-anchor="middle" font-size="11" fill="#111">1e${e}</text>`,
    );
  }
  for (const e of axes.yTicks()) {
    const y = axes.py(Math.exp(e * Math.LN10));
    pieces.push(`<line x1="${left - 5}" y1="${fmt(y)}" x2="${left}" y2="${fmt(y)}" stroke="#333"/>`);
    pieces.push(
      `<text x="${left - 8}" y="${fmt(y)}" text-anchor="end" dominant-baseline="middle" font-size="11" fill="#111">1e${e}</text>`,
    );
  }
  panel.series.forEach((series, i) => pieces.push(renderSeries(axes, series, i)));
  pieces.push("</g>");
  return pieces.join("\n");
}

export function renderFigure(panels: PanelSpec[]): string {
  if (panels.length === 0) {
    throw new Error("a figure needs at least one panel");
  }
  const width = panels.length * PANEL_WIDTH;
  const body = panels.map((panel, i) => renderPanel(panel, i)).join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_HEIGHT}" viewBox="0 0 ${width} ${PANEL_HEIGHT}">`,
    `<rect x="0" y="0" width="${width}" height="${PANEL_HEIGHT}" fill="#ffffff"/>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}
