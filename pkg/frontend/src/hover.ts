import type { PagePayload } from "./api.js";

// Bidirectional link lookup built once per page payload.
export interface LinkIndex {
  segments: Map<string, Set<string>>;
  // "segId:tokenIndex" -> set of counterpart "segId:tokenIndex"
  tokens: Map<string, Set<string>>;
}

export function buildLinkIndex(page: PagePayload): LinkIndex {
  const segments = new Map<string, Set<string>>();
  const add = (from: string, to: string) => {
    let set = segments.get(from);
    if (!set) {
      set = new Set();
      segments.set(from, set);
    }
    set.add(to);
  };
  for (const [src, tgt] of page.sentence_links) {
    add(src, tgt);
    add(tgt, src);
  }

  const tokens = new Map<string, Set<string>>();
  const addTok = (from: string, to: string) => {
    let set = tokens.get(from);
    if (!set) {
      set = new Set();
      tokens.set(from, set);
    }
    set.add(to);
  };
  for (const wl of page.word_links) {
    for (const [i, j] of wl.links) {
      addTok(`${wl.source_id}:${i}`, `${wl.target_id}:${j}`);
      addTok(`${wl.target_id}:${j}`, `${wl.source_id}:${i}`);
    }
  }
  return { segments, tokens };
}

export const SEGMENT_HOVER_CLASS = "hover-linked";
export const TOKEN_HOVER_CLASS = "hover-token";

function clear(root: ParentNode, selector: string, klass: string): void {
  for (const el of Array.from(root.querySelectorAll(selector))) {
    el.classList.remove(klass);
  }
}

// Highlight exactly the segments linked to segmentId (none for null or
// unlinked ids). Returns the set of highlighted segment ids.
export function applyHover(
  root: ParentNode,
  index: LinkIndex,
  segmentId: string | null,
): Set<string> {
  clear(root, `.${SEGMENT_HOVER_CLASS}`, SEGMENT_HOVER_CLASS);
  const linked = segmentId ? (index.segments.get(segmentId) ?? new Set<string>()) : new Set<string>();
  const applied = new Set<string>();
  for (const id of linked) {
    for (const el of Array.from(
      root.querySelectorAll(`[data-segment-id="${id}"]`),
    )) {
      el.classList.add(SEGMENT_HOVER_CLASS);
      applied.add(id);
    }
  }
  return applied;
}

// Highlight the word-aligned counterpart tokens of one hovered token.
export function applyTokenHover(
  root: ParentNode,
  index: LinkIndex,
  segmentId: string | null,
  tokenIndex: number | null,
): Set<string> {
  clear(root, `.${TOKEN_HOVER_CLASS}`, TOKEN_HOVER_CLASS);
  if (segmentId === null || tokenIndex === null) return new Set();
  const linked = index.tokens.get(`${segmentId}:${tokenIndex}`) ?? new Set<string>();
  const applied = new Set<string>();
  for (const key of linked) {
    const sep = key.lastIndexOf(":");
    const segId = key.slice(0, sep);
    const tok = key.slice(sep + 1);
    for (const el of Array.from(
      root.querySelectorAll(`[data-segment-id="${segId}"] [data-token="${tok}"]`),
    )) {
      el.classList.add(TOKEN_HOVER_CLASS);
      applied.add(key);
    }
  }
  return applied;
}

// Wire mouse events for both panes onto a rendered page pair.
export function attachHoverHandlers(root: HTMLElement, index: LinkIndex): void {
  root.addEventListener("mouseover", (event) => {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    const segEl = target.closest<HTMLElement>("[data-segment-id]");
    applyHover(root, index, segEl?.dataset.segmentId ?? null);
    const tokEl = target.closest<HTMLElement>("[data-token]");
    if (segEl && tokEl) {
      applyTokenHover(root, index, segEl.dataset.segmentId ?? null, Number(tokEl.dataset.token));
    } else {
      applyTokenHover(root, index, null, null);
    }
  });
  root.addEventListener("mouseleave", () => {
    applyHover(root, index, null);
    applyTokenHover(root, index, null, null);
  });
}
