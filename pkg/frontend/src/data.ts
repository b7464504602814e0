/**
 * Reading the generator's TSV datasets (raw or spaced digits) into
 * aligned source/target arrays, plus batch iteration helpers.
 */

import * as fs from "node:fs";

export interface PairData {
  sources: string[];
  targets: string[];
}

function stripSpaces(s: string): string {
  return s.replace(/ /g, "");
}

export function readPairs(path: string, limit?: number): PairData {
  const text = fs.readFileSync(path, "utf-8");
  const sources: string[] = [];
  const targets: string[] = [];
  for (const line of text.split("\n")) {
    if (line === "") continue;
    const tab = line.indexOf("\t");
    if (tab < 0) {
      throw new Error(`${path}: expected SOURCE<TAB>TARGET, got ${JSON.stringify(line)}`);
    }
    sources.push(stripSpaces(line.slice(0, tab)));
    targets.push(stripSpaces(line.slice(tab + 1).trimEnd()));
    if (limit !== undefined && sources.length >= limit) break;
  }
  return { sources, targets };
}

/** Sources only: first TSV column when tabs are present, else whole lines. */
export function readSources(path: string, limit?: number): string[] {
  const text = fs.readFileSync(path, "utf-8");
  const out: string[] = [];
  for (const line of text.split("\n")) {
    if (line === "") continue;
    const tab = line.indexOf("\t");
    out.push(stripSpaces(tab < 0 ? line.trimEnd() : line.slice(0, tab)));
    if (limit !== undefined && out.length >= limit) break;
  }
  return out;
}

export function dataAlphabet(pairs: PairData): string[] {
  const chars = new Set<string>();
  for (const s of pairs.sources) for (const c of s) chars.add(c);
  for (const t of pairs.targets) for (const c of t) chars.add(c);
  return [...chars].sort();
}

export function maxLength(strings: string[]): number {
  let max = 0;
  for (const s of strings) if (s.length > max) max = s.length;
  return max;
}

/** Deterministic in-place shuffle (mulberry32 PRNG). */
export function seededShuffle(indices: number[], seed: number): void {
  let a = seed >>> 0;
  const next = () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
  for (let i = indices.length - 1; i > 0; i--) {
    const j = Math.floor(next() * (i + 1));
    [indices[i], indices[j]] = [indices[j], indices[i]];
  }
}
