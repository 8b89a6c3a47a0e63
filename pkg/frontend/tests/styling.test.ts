// Provenance styling: global/dictionary/tm classes map to yellow/green/blue.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { renderPagePair, renderSegmentContent } from "../src/render.js";
import { samplePage } from "./fixtures.js";

function segmentWithHighlight(provenance: string) {
  return {
    id: "t1",
    text: "बैंक दर कम",
    origin_id: null,
    tokens: [
      { surface: "बैंक", start: 0, end: 4 },
      { surface: "दर", start: 5, end: 7 },
      { surface: "कम", start: 8, end: 10 },
    ],
    highlights: [
      { start: 0, end: 4, provenance: provenance as never, rule_id: "r1" },
    ],
    bbox: null,
  };
}

describe("provenance classes", () => {
  it.each([
    ["GlobalReplacement", "global"],
    ["DictionaryReplacement", "dictionary"],
    ["TmReplacement", "tm"],
  ])("%s renders class %s", (provenance, klass) => {
    const fragment = renderSegmentContent(segmentWithHighlight(provenance));
    const host = document.createElement("div");
    host.appendChild(fragment);
    const span = host.querySelector(`.hl.${klass}`);
    expect(span).not.toBeNull();
    expect(span!.textContent).toBe("बैंक");
    for (const other of ["global", "dictionary", "tm"]) {
      if (other !== klass) expect(host.querySelector(`.${other}`)).toBeNull();
    }
  });

  it("a highlight spanning several tokens colors the whole span", () => {
    const seg = segmentWithHighlight("GlobalReplacement");
    seg.highlights = [{ start: 0, end: 7, provenance: "GlobalReplacement", rule_id: "r1" }];
    const host = document.createElement("div");
    host.appendChild(renderSegmentContent(seg));
    const text = Array.from(host.querySelectorAll(".hl.global"))
      .map((el) => el.textContent)
      .join("");
    expect(text).toBe("बैंक दर");
  });

  it("stylesheet maps the classes to yellow, green, and blue", () => {
    const css = readFileSync(join(__dirname, "..", "styles.css"), "utf-8");
    expect(css).toMatch(/--global-color:\s*#ffe066/); // yellow
    expect(css).toMatch(/--dictionary-color:\s*#8ce99a/); // green
    expect(css).toMatch(/--tm-color:\s*#74c0fc/); // blue
    expect(css).toMatch(/\.hl\.global \{ background: var\(--global-color\); \}/);
    expect(css).toMatch(/\.hl\.dictionary \{ background: var\(--dictionary-color\); \}/);
    expect(css).toMatch(/\.hl\.tm \{ background: var\(--tm-color\); \}/);
  });
});

describe("page pair rendering", () => {
  it("renders both panes with segment ids", () => {
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById("root")!;
    renderPagePair(root, samplePage());
    expect(root.querySelectorAll(".target-pane .segment")).toHaveLength(3);
    expect(root.querySelectorAll(".source-pane .segment")).toHaveLength(3);
    expect(
      root.querySelector('[data-segment-id="p1t1"]')!.textContent,
    ).toBe("बैंक दर");
  });

  it("empty page renders empty-state messages in both panes", () => {
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById("root")!;
    const page = samplePage();
    page.source_segments = [];
    page.target_segments = [];
    page.sentence_links = [];
    page.word_links = [];
    renderPagePair(root, page);
    expect(root.querySelectorAll(".empty-state")).toHaveLength(2);
  });
});
