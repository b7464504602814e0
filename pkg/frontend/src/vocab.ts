/**
 * Character tokenizer for digit-rewrite pairs.
 *
 * Fixed special ids (PAD=0, SOS=1, EOS=2) followed by the dataset's
 * digit alphabet, so a {1,2,3} dataset gets vocab size 6 and the full
 * 1..9 alphabet caps out at 12.
 */

export const PAD = 0;
export const SOS = 1;
export const EOS = 2;
export const SPECIALS = ["<pad>", "<s>", "</s>"];

export interface Vocab {
  chars: string[];
  index: Map<string, number>;
  size: number;
}

export function buildVocab(alphabet: string[]): Vocab {
  const digits = [...new Set(alphabet)].sort();
  for (const d of digits) {
    if (!/^[1-9]$/.test(d)) {
      throw new Error(`vocab accepts digits 1..9, got ${JSON.stringify(d)}`);
    }
  }
  const chars = [...SPECIALS, ...digits];
  const index = new Map(digits.map((d, i) => [d, i + SPECIALS.length]));
  return { chars, index, size: chars.length };
}

function idOf(vocab: Vocab, ch: string): number {
  const id = vocab.index.get(ch);
  if (id === undefined) {
    throw new Error(`character ${JSON.stringify(ch)} is not in the vocabulary`);
  }
  return id;
}

/** Source ids, right-padded with PAD to `len`. */
export function encodeSource(s: string, vocab: Vocab, len: number): number[] {
  if (s.length > len) {
    throw new Error(`source ${s} longer than window ${len}`);
  }
  const out = new Array<number>(len).fill(PAD);
  for (let i = 0; i < s.length; i++) out[i] = idOf(vocab, s[i]);
  return out;
}

/** Teacher-forcing decoder input: SOS then the target, padded. */
export function encodeTargetIn(s: string, vocab: Vocab, len: number): number[] {
  const out = new Array<number>(len).fill(PAD);
  out[0] = SOS;
  for (let i = 0; i < s.length; i++) out[i + 1] = idOf(vocab, s[i]);
  return out;
}

/** Decoder labels: the target then EOS, padded. */
export function encodeTargetOut(s: string, vocab: Vocab, len: number): number[] {
  const out = new Array<number>(len).fill(PAD);
  for (let i = 0; i < s.length; i++) out[i] = idOf(vocab, s[i]);
  out[s.length] = EOS;
  return out;
}

/** Ids back to a digit string; stops at EOS, skips specials. */
export function decodeIds(ids: number[], vocab: Vocab): string {
  let out = "";
  for (const id of ids) {
    if (id === EOS) break;
    if (id === PAD || id === SOS) continue;
    const ch = vocab.chars[id];
    if (ch === undefined) {
      throw new Error(`id ${id} is outside the vocabulary`);
    }
    out += ch;
  }
  return out;
}
