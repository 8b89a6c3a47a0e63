// Hover highlighting equals the link relation exactly: no more, no fewer.

import { beforeEach, describe, expect, it } from "vitest";

import {
  SEGMENT_HOVER_CLASS,
  TOKEN_HOVER_CLASS,
  applyHover,
  applyTokenHover,
  buildLinkIndex,
} from "../src/hover.js";
import { renderPagePair } from "../src/render.js";
import { samplePage } from "./fixtures.js";

function highlightedIds(): string[] {
  return Array.from(document.querySelectorAll(`.${SEGMENT_HOVER_CLASS}`)).map(
    (el) => (el as HTMLElement).dataset.segmentId!,
  );
}

describe("segment hover", () => {
  let root: HTMLElement;
  const page = samplePage();
  const index = buildLinkIndex(page);

  beforeEach(() => {
    document.body.innerHTML = '<div id="root"></div>';
    root = document.getElementById("root")!;
    renderPagePair(root, page);
  });

  it("hovering each linked source highlights exactly its linked target", () => {
    for (const [src, tgt] of page.sentence_links) {
      const applied = applyHover(root, index, src);
      expect(applied).toEqual(new Set([tgt]));
      expect(highlightedIds()).toEqual([tgt]);
    }
  });

  it("hovering a target highlights exactly its source", () => {
    applyHover(root, index, "p1t2");
    expect(highlightedIds()).toEqual(["p1s2"]);
  });

  it("unlinked segments highlight nothing", () => {
    for (const id of ["p1s3", "p1t3"]) {
      const applied = applyHover(root, index, id);
      expect(applied.size).toBe(0);
      expect(highlightedIds()).toEqual([]);
    }
  });

  it("clearing the hover removes all marks", () => {
    applyHover(root, index, "p1s1");
    applyHover(root, index, null);
    expect(highlightedIds()).toEqual([]);
  });

  it("moving the hover replaces the previous highlight set", () => {
    applyHover(root, index, "p1s1");
    applyHover(root, index, "p1s2");
    expect(highlightedIds()).toEqual(["p1t2"]);
  });
});

describe("token hover", () => {
  let root: HTMLElement;
  const page = samplePage();
  const index = buildLinkIndex(page);

  beforeEach(() => {
    document.body.innerHTML = '<div id="root"></div>';
    root = document.getElementById("root")!;
    renderPagePair(root, page);
  });

  it("highlights the word-aligned counterpart tokens", () => {
    const applied = applyTokenHover(root, index, "p1s1", 0);
    expect(applied).toEqual(new Set(["p1t1:0"]));
    const marked = Array.from(document.querySelectorAll(`.${TOKEN_HOVER_CLASS}`));
    expect(marked).toHaveLength(1);
    expect((marked[0] as HTMLElement).textContent).toBe("बैंक");
  });

  it("works in the reverse direction", () => {
    const applied = applyTokenHover(root, index, "p1t1", 1);
    expect(applied).toEqual(new Set(["p1s1:1"]));
  });

  it("unaligned tokens highlight nothing", () => {
    expect(applyTokenHover(root, index, "p1s2", 0).size).toBe(0);
    expect(document.querySelectorAll(`.${TOKEN_HOVER_CLASS}`)).toHaveLength(0);
  });
});
