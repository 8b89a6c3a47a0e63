// Client-side mirror of the service's SLP1 -> Devanagari table, so the
// editor can transliterate committed input without a round trip.

const INDEPENDENT_VOWELS: Record<string, string> = {
  a: "अ",
  A: "आ",
  i: "इ",
  I: "ई",
  u: "उ",
  U: "ऊ",
  f: "ऋ",
  F: "ॠ",
  x: "ऌ",
  X: "ॡ",
  e: "ए",
  E: "ऐ",
  o: "ओ",
  O: "औ",
};

const VOWEL_SIGNS: Record<string, string> = {
  a: "",
  A: "ा",
  i: "ि",
  I: "ी",
  u: "ु",
  U: "ू",
  f: "ृ",
  F: "ॄ",
  x: "ॢ",
  X: "ॣ",
  e: "े",
  E: "ै",
  o: "ो",
  O: "ौ",
};

const CONSONANTS: Record<string, string> = {
  k: "क",
  K: "ख",
  g: "ग",
  G: "घ",
  N: "ङ",
  c: "च",
  C: "छ",
  j: "ज",
  J: "झ",
  Y: "ञ",
  w: "ट",
  W: "ठ",
  q: "ड",
  Q: "ढ",
  R: "ण",
  t: "त",
  T: "थ",
  d: "द",
  D: "ध",
  n: "न",
  p: "प",
  P: "फ",
  b: "ब",
  B: "भ",
  m: "म",
  y: "य",
  r: "र",
  l: "ल",
  v: "व",
  S: "श",
  z: "ष",
  s: "स",
  h: "ह",
  L: "ळ",
};

const MARKS: Record<string, string> = {
  M: "ं",
  H: "ः",
  "~": "ँ",
  "'": "ऽ",
};

const VIRAMA = "्";

export class Slp1Error extends Error {
  constructor(
    public char: string,
    public position: number,
  ) {
    super(`invalid SLP1 character ${JSON.stringify(char)} at position ${position}`);
  }
}

export function slp1ToDevanagari(text: string): string {
  const out: string[] = [];
  let pending: string | null = null;
  const flush = () => {
    if (pending !== null) {
      out.push(pending + VIRAMA);
      pending = null;
    }
  };
  for (let pos = 0; pos < text.length; pos++) {
    const ch = text[pos]!;
    if (ch in CONSONANTS) {
      flush();
      pending = CONSONANTS[ch]!;
    } else if (ch in VOWEL_SIGNS) {
      if (pending !== null) {
        out.push(pending + VOWEL_SIGNS[ch]!);
        pending = null;
      } else {
        out.push(INDEPENDENT_VOWELS[ch]!);
      }
    } else if (ch in MARKS) {
      flush();
      out.push(MARKS[ch]!);
    } else if (/\s/.test(ch) || (ch >= "0" && ch <= "9")) {
      flush();
      out.push(ch);
    } else {
      throw new Slp1Error(ch, pos);
    }
  }
  flush();
  return out.join("");
}

export interface CommitResult {
  text: string;
  // words left untranslated because they contain a non-SLP1 character
  errors: { word: string; offset: number; position: number }[];
}

const ASCII_WORD = /^[\x21-\x7e]+$/;

// Transliterate a committed input buffer word by word. Words that already
// contain non-ASCII text (e.g. Devanagari being re-edited) pass through;
// an invalid SLP1 character leaves that word raw and reports the error.
export function transliterateCommit(buffer: string, enabled: boolean): CommitResult {
  if (!enabled) return { text: buffer, errors: [] };
  const parts = buffer.split(/(\s+)/);
  const out: string[] = [];
  const errors: CommitResult["errors"] = [];
  let offset = 0;
  for (const part of parts) {
    if (part === "" || /^\s+$/.test(part) || !ASCII_WORD.test(part)) {
      out.push(part);
    } else {
      try {
        out.push(slp1ToDevanagari(part));
      } catch (err) {
        if (err instanceof Slp1Error) {
          errors.push({ word: part, offset, position: err.position });
          out.push(part); // raw text preserved
        } else {
          throw err;
        }
      }
    }
    offset += part.length;
  }
  return { text: out.join(""), errors };
}
