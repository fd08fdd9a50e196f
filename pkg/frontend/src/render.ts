import { actionableIds, selectionIsEligible, type ViewState } from "./state.js";
import type { ConfigurationJson, LabelName } from "./types.js";

// P(i,j) sits at grid position (i,j) with j growing upward, like the printed
// diagrams; Q(i) is offset past the diagonal at (i+0.55, i-0.55).

const CELL = 96;
const MARGIN = 64;

export interface Glyph {
  id: string;
  label: LabelName;
  x: number;
  y: number;
  caption: string;
  actionable: boolean;
  selected: boolean;
}

export interface Stroke {
  a: string;
  b: string;
  kind: "solid" | "dotted";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface SvgDoc {
  width: number;
  height: number;
  glyphs: Glyph[];
  strokes: Stroke[];
}

function gridPosition(id: string): { x: number; y: number } {
  const parts = id.split(":");
  if (parts[0] === "P") {
    return { x: Number(parts[1]), y: Number(parts[2]) };
  }
  const i = Number(parts[1]);
  return { x: i + 0.55, y: i - 0.55 };
}

function caption(id: string): string {
  const parts = id.split(":");
  return parts[0] === "P" ? `P(${parts[1]},${parts[2]})` : `Q(${parts[1]})`;
}

export function buildDoc(view: ViewState): SvgDoc {
  const config: ConfigurationJson = view.config;
  const k = config.k;
  const toSvg = (p: { x: number; y: number }) => ({
    x: MARGIN + (p.x - 1) * CELL,
    y: MARGIN + (k - p.y) * CELL,
  });
  const actionable = actionableIds(view.eligible);
  const centers = new Map<string, { x: number; y: number }>();
  for (const vertex of config.vertices) {
    centers.set(vertex.id, toSvg(gridPosition(vertex.id)));
  }
  const glyphs: Glyph[] = config.vertices.map((vertex) => {
    const at = centers.get(vertex.id)!;
    return {
      id: vertex.id,
      label: vertex.label,
      x: at.x,
      y: at.y,
      caption: caption(vertex.id),
      actionable: actionable.has(vertex.id),
      selected: view.selection.has(vertex.id),
    };
  });
  const strokes: Stroke[] = config.edges.map((edge) => {
    const from = centers.get(edge.a)!;
    const to = centers.get(edge.b)!;
    return { a: edge.a, b: edge.b, kind: edge.kind, x1: from.x, y1: from.y, x2: to.x, y2: to.y };
  });
  const size = MARGIN * 2 + (k - 0.45) * CELL;
  return { width: Math.ceil(size), height: Math.ceil(size), glyphs, strokes };
}

function glyphShape(glyph: Glyph): string {
  const { x, y } = glyph;
  switch (glyph.label) {
    case "square":
      return `<rect x="${x - 20}" y="${y - 20}" width="40" height="40" />`;
    case "ellipse":
      return `<ellipse cx="${x}" cy="${y}" rx="26" ry="16" />`;
    case "plusbox":
      return (
        `<circle cx="${x}" cy="${y}" r="20" />` +
        `<line x1="${x - 20}" y1="${y}" x2="${x + 20}" y2="${y}" />` +
        `<line x1="${x}" y1="${y - 20}" x2="${x}" y2="${y + 20}" />`
      );
    case "circle":
      return `<circle cx="${x}" cy="${y}" r="22" />`;
    case "ruled4":
      return `<polygon points="${x - 26},${y + 16} ${x + 26},${y + 16} ${x + 14},${y - 16} ${x - 14},${y - 16}" />`;
  }
}

export function svgMarkup(doc: SvgDoc): string {
  const strokes = doc.strokes
    .map((stroke) => {
      const dash = stroke.kind === "dotted" ? ' stroke-dasharray="6 5"' : "";
      return (
        `<line class="edge ${stroke.kind}" data-edge="${stroke.a}~${stroke.b}" ` +
        `x1="${stroke.x1}" y1="${stroke.y1}" x2="${stroke.x2}" y2="${stroke.y2}"${dash} />`
      );
    })
    .join("\n    ");
  const glyphs = doc.glyphs
    .map((glyph) => {
      const classes = ["glyph", glyph.label];
      if (glyph.actionable) classes.push("actionable");
      if (glyph.selected) classes.push("selected");
      return (
        `<g class="${classes.join(" ")}" data-id="${glyph.id}">` +
        glyphShape(glyph) +
        `<text x="${glyph.x}" y="${glyph.y + 38}" text-anchor="middle">${glyph.caption}</text>` +
        `</g>`
      );
    })
    .join("\n    ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${doc.width}" height="${doc.height}" ` +
    `viewBox="0 0 ${doc.width} ${doc.height}">\n    ${strokes}\n    ${glyphs}\n  </svg>`
  );
}

export function pageMarkup(view: ViewState): string {
  const undoDisabled = view.historyLen === 0 ? " disabled" : "";
  const commitDisabled = selectionIsEligible(view) ? "" : " disabled";
  const banner = view.error
    ? `<div class="banner error" role="alert">${view.error}</div>`
    : "";
  const picked = [...view.selection].sort().join(", ") || "none";
  return `
  <header>
    <span class="history">moves: ${view.historyLen}</span>
    <button data-action="undo"${undoDisabled}>undo</button>
    <button data-action="commit"${commitDisabled}>flop selected</button>
    <span class="selection">selected: ${picked}</span>
  </header>
  ${banner}
  ${svgMarkup(buildDoc(view))}`;
}
