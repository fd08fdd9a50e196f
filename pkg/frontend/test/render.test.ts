import { describe, expect, it } from "vitest";

import { buildDoc, pageMarkup, svgMarkup } from "../src/render.js";
import { fromResponse, toggleSelection } from "../src/state.js";
import type { SessionView } from "../src/types.js";

// fixtures copied verbatim from the engine's wire output
const K1_INITIAL: SessionView = {
  session: "fixture1",
  config: {
    k: 1,
    vertices: [
      { id: "P:1:1", label: "circle" },
      { id: "Q:1", label: "ruled4" },
    ],
    edges: [
      { a: "P:1:1", b: "Q:1", kind: "solid", exceptional: { "P:1:1": false, "Q:1": false } },
    ],
  },
  eligible: [["P:1:1"]],
  history_len: 0,
};

const K2_INITIAL: SessionView = {
  session: "fixture2",
  config: {
    k: 2,
    vertices: [
      { id: "P:1:1", label: "circle" },
      { id: "P:1:2", label: "ellipse" },
      { id: "P:2:2", label: "circle" },
      { id: "Q:1", label: "ruled4" },
      { id: "Q:2", label: "ruled4" },
    ],
    edges: [
      { a: "P:1:1", b: "P:1:2", kind: "solid", exceptional: { "P:1:1": false, "P:1:2": false } },
      { a: "P:1:1", b: "Q:1", kind: "solid", exceptional: { "P:1:1": false, "Q:1": false } },
      { a: "P:1:2", b: "P:2:2", kind: "solid", exceptional: { "P:1:2": false, "P:2:2": false } },
      { a: "P:1:2", b: "Q:1", kind: "dotted", exceptional: { "P:1:2": false, "Q:1": false } },
      { a: "P:1:2", b: "Q:2", kind: "dotted", exceptional: { "P:1:2": false, "Q:2": false } },
      { a: "P:2:2", b: "Q:2", kind: "solid", exceptional: { "P:2:2": false, "Q:2": false } },
    ],
  },
  eligible: [["P:1:1"], ["P:2:2"], ["P:1:1", "P:2:2"]],
  history_len: 0,
};

describe("buildDoc", () => {
  it("renders the k=1 start: two glyphs, one solid stroke, one actionable plane", () => {
    const doc = buildDoc(fromResponse(K1_INITIAL));
    expect(doc.glyphs).toHaveLength(2);
    expect(doc.strokes).toHaveLength(1);
    expect(doc.strokes[0]!.kind).toBe("solid");
    const actionable = doc.glyphs.filter((g) => g.actionable).map((g) => g.id);
    expect(actionable).toEqual(["P:1:1"]);
  });

  it("renders the k=2 start: five glyphs, four solid and two dotted strokes", () => {
    const doc = buildDoc(fromResponse(K2_INITIAL));
    expect(doc.glyphs).toHaveLength(5);
    expect(doc.strokes).toHaveLength(6);
    expect(doc.strokes.filter((s) => s.kind === "solid")).toHaveLength(4);
    expect(doc.strokes.filter((s) => s.kind === "dotted")).toHaveLength(2);
  });

  it("renders no actionable glyphs when nothing is eligible", () => {
    const inert: SessionView = {
      ...K1_INITIAL,
      config: {
        ...K1_INITIAL.config,
        vertices: [
          { id: "P:1:1", label: "square" },
          { id: "Q:1", label: "ruled4" },
        ],
      },
      eligible: [],
    };
    const doc = buildDoc(fromResponse(inert));
    expect(doc.glyphs.some((g) => g.actionable)).toBe(false);
  });

  it("places P glyphs on the grid and Q glyphs past the diagonal", () => {
    const doc = buildDoc(fromResponse(K2_INITIAL));
    const at = new Map(doc.glyphs.map((g) => [g.id, g]));
    const p11 = at.get("P:1:1")!;
    const p12 = at.get("P:1:2")!;
    const p22 = at.get("P:2:2")!;
    const q1 = at.get("Q:1")!;
    expect(p12.x).toBe(p11.x); // same column i=1
    expect(p12.y).toBeLessThan(p11.y); // higher j drawn higher up
    expect(p22.x).toBeGreaterThan(p12.x);
    expect(q1.x).toBeGreaterThan(p11.x); // offset past the diagonal
    expect(q1.y).toBeGreaterThan(p11.y);
  });
});

describe("svgMarkup and pageMarkup", () => {
  it("draws glyph shapes per label and dash patterns per edge kind", () => {
    const markup = svgMarkup(buildDoc(fromResponse(K2_INITIAL)));
    expect(markup.match(/class="glyph circle actionable"/g)).toHaveLength(2);
    expect(markup).toContain('class="glyph ellipse"');
    expect(markup.match(/class="glyph ruled4"/g)).toHaveLength(2);
    expect(markup.match(/stroke-dasharray/g)).toHaveLength(2);
  });

  it("shows the history count and controls, with undo disabled at the root", () => {
    const markup = pageMarkup(fromResponse(K2_INITIAL));
    expect(markup).toContain("moves: 0");
    expect(markup).toContain('data-action="undo" disabled');
    expect(markup).toContain('data-action="commit" disabled');
  });

  it("enables the commit control once the selection forms an eligible move", () => {
    let view = fromResponse(K2_INITIAL);
    view = toggleSelection(view, "P:1:1");
    const markup = pageMarkup(view);
    expect(markup).toContain('class="glyph circle actionable selected"');
    expect(markup).not.toContain('data-action="commit" disabled');
    expect(markup).toContain("selected: P:1:1");
  });

  it("surfaces server errors as a banner", () => {
    const view = { ...fromResponse(K1_INITIAL), error: "nope" };
    expect(pageMarkup(view)).toContain('<div class="banner error" role="alert">nope</div>');
  });
});

describe("toggleSelection", () => {
  it("ignores inert vertices entirely", () => {
    const view = fromResponse(K2_INITIAL);
    expect(toggleSelection(view, "P:1:2")).toBe(view);
    expect(toggleSelection(view, "Q:1")).toBe(view);
  });

  it("accepts any subset of one eligible move and toggles back off", () => {
    let view = fromResponse(K2_INITIAL);
    view = toggleSelection(view, "P:1:1");
    view = toggleSelection(view, "P:2:2");
    expect([...view.selection].sort()).toEqual(["P:1:1", "P:2:2"]);
    view = toggleSelection(view, "P:2:2");
    expect([...view.selection]).toEqual(["P:1:1"]);
  });

  it("refuses selections no eligible move contains", () => {
    const twoSingles: SessionView = { ...K2_INITIAL, eligible: [["P:1:1"], ["P:2:2"]] };
    let view = fromResponse(twoSingles);
    view = toggleSelection(view, "P:1:1");
    const next = toggleSelection(view, "P:2:2");
    expect(next).toBe(view); // {P:1:1, P:2:2} is not a subset of any single move
  });
});
