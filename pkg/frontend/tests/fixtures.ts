// Shared in-memory page payload used by the DOM-only tests.

import type { PagePayload, SegmentPayload } from "../src/api.js";

function seg(
  id: string,
  text: string,
  tokens: [string, number, number][],
  originId: string | null = null,
  highlights: SegmentPayload["highlights"] = [],
): SegmentPayload {
  return {
    id,
    text,
    origin_id: originId,
    tokens: tokens.map(([surface, start, end]) => ({ surface, start, end })),
    highlights,
    bbox: null,
  };
}

export function samplePage(): PagePayload {
  return {
    index: 1,
    status: "Unedited",
    source_render: null,
    source_segments: [
      seg("p1s1", "bank rate", [
        ["bank", 0, 4],
        ["rate", 5, 9],
      ]),
      seg("p1s2", "it fell", [
        ["it", 0, 2],
        ["fell", 3, 7],
      ]),
      seg("p1s3", "orphan line", [
        ["orphan", 0, 6],
        ["line", 7, 11],
      ]),
    ],
    target_segments: [
      seg(
        "p1t1",
        "बैंक दर",
        [
          ["बैंक", 0, 4],
          ["दर", 5, 7],
        ],
        "p1s1",
      ),
      seg(
        "p1t2",
        "वह गिरी",
        [
          ["वह", 0, 2],
          ["गिरी", 3, 7],
        ],
        "p1s2",
      ),
      seg("p1t3", "inserted", [["inserted", 0, 8]], null),
    ],
    sentence_links: [
      ["p1s1", "p1t1"],
      ["p1s2", "p1t2"],
    ],
    word_links: [
      {
        source_id: "p1s1",
        target_id: "p1t1",
        links: [
          [0, 0],
          [1, 1],
        ],
      },
      { source_id: "p1s2", target_id: "p1t2", links: [[1, 1]] },
    ],
    version: 1,
  };
}
