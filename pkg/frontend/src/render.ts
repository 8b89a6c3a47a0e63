import type { PagePayload, SegmentPayload } from "./api.js";

const PROVENANCE_CLASS: Record<string, string> = {
  GlobalReplacement: "global",
  DictionaryReplacement: "dictionary",
  TmReplacement: "tm",
};

// Render one segment's text as spans carrying provenance classes and
// token indices. Pieces are split at every token and highlight boundary,
// so a highlight spanning several tokens colors the gaps between them too.
export function renderSegmentContent(segment: SegmentPayload): DocumentFragment {
  const fragment = document.createDocumentFragment();
  const boundaries = new Set<number>([0, segment.text.length]);
  for (const tok of segment.tokens) {
    boundaries.add(tok.start);
    boundaries.add(tok.end);
  }
  for (const hl of segment.highlights) {
    boundaries.add(hl.start);
    boundaries.add(hl.end);
  }
  const cuts = Array.from(boundaries).sort((a, b) => a - b);
  for (let i = 0; i + 1 < cuts.length; i++) {
    const start = cuts[i]!;
    const end = cuts[i + 1]!;
    if (start >= end) continue;
    const text = segment.text.slice(start, end);
    const highlight = segment.highlights.find((h) => h.start <= start && end <= h.end);
    const token = segment.tokens.findIndex((t) => t.start <= start && end <= t.end);
    if (highlight === undefined && token < 0) {
      fragment.appendChild(document.createTextNode(text));
      continue;
    }
    const span = document.createElement("span");
    if (token >= 0) {
      span.classList.add("tok");
      span.dataset.token = String(token);
    }
    if (highlight !== undefined) {
      span.classList.add("hl", PROVENANCE_CLASS[highlight.provenance] ?? "unknown");
      span.dataset.ruleId = highlight.rule_id;
    }
    span.textContent = text;
    fragment.appendChild(span);
  }
  return fragment;
}

function renderSegment(segment: SegmentPayload, side: "source" | "target"): HTMLElement {
  const el = document.createElement("div");
  el.className = `segment ${side}`;
  el.dataset.segmentId = segment.id;
  if (segment.origin_id) el.dataset.originId = segment.origin_id;
  el.appendChild(renderSegmentContent(segment));
  return el;
}

export interface RenderOptions {
  renderUrl?: string | null; // image URL when the page ships a render
}

// Two-pane layout: editable target on the left, source on the right.
export function renderPagePair(
  root: HTMLElement,
  page: PagePayload,
  options: RenderOptions = {},
): void {
  root.textContent = "";
  const container = document.createElement("div");
  container.className = "panes";
  container.dataset.page = String(page.index);
  container.dataset.status = page.status;

  const targetPane = document.createElement("section");
  targetPane.className = "pane target-pane";
  if (page.target_segments.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "This page has no target segments.";
    targetPane.appendChild(empty);
  }
  for (const seg of page.target_segments) {
    targetPane.appendChild(renderSegment(seg, "target"));
  }

  const sourcePane = document.createElement("section");
  sourcePane.className = "pane source-pane";
  if (page.source_render && options.renderUrl) {
    const img = document.createElement("img");
    img.className = "source-render";
    img.src = options.renderUrl;
    img.alt = `source page ${page.index}`;
    const wrap = document.createElement("div");
    wrap.className = "render-wrap";
    wrap.appendChild(img);
    for (const seg of page.source_segments) {
      if (!seg.bbox) continue;
      const [x, y, w, h] = seg.bbox;
      const overlay = document.createElement("div");
      overlay.className = "bbox-overlay";
      overlay.dataset.segmentId = seg.id;
      overlay.style.left = `${x * 100}%`;
      overlay.style.top = `${y * 100}%`;
      overlay.style.width = `${w * 100}%`;
      overlay.style.height = `${h * 100}%`;
      wrap.appendChild(overlay);
    }
    sourcePane.appendChild(wrap);
  } else if (page.source_segments.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "This page has no source content.";
    sourcePane.appendChild(empty);
  } else {
    for (const seg of page.source_segments) {
      sourcePane.appendChild(renderSegment(seg, "source"));
    }
  }

  container.appendChild(targetPane);
  container.appendChild(sourcePane);
  root.appendChild(container);
}

export function renderErrorBanner(root: HTMLElement, message: string): void {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.textContent = message;
  root.prepend(banner);
}
