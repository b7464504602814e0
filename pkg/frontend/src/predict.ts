/**
 * Batch prediction: greedy decodes for every source, written as the
 * source-aligned TSV the scoring harness consumes.
 */

import * as fs from "node:fs";

import * as tf from "@tensorflow/tfjs";

import { readSources } from "./data.js";
import { ModelConfig, greedyDecodeBatch } from "./model.js";
import { Vocab } from "./vocab.js";

export const DECODE_BATCH = 256;

export function predictSources(
  model: tf.LayersModel,
  cfg: ModelConfig,
  vocab: Vocab,
  sources: string[],
  log?: (msg: string) => void
): string[] {
  const out: string[] = [];
  for (let at = 0; at < sources.length; at += DECODE_BATCH) {
    const chunk = sources.slice(at, at + DECODE_BATCH);
    out.push(...greedyDecodeBatch(model, cfg, vocab, chunk));
    if (log && sources.length > DECODE_BATCH) {
      log(`  predicted ${out.length}/${sources.length}`);
    }
  }
  return out;
}

export function predictFile(
  model: tf.LayersModel,
  cfg: ModelConfig,
  vocab: Vocab,
  sourcesPath: string,
  outPath: string,
  log?: (msg: string) => void
): number {
  const sources = readSources(sourcesPath);
  const predictions = predictSources(model, cfg, vocab, sources, log);
  const lines = sources.map((s, i) => `${s}\t${predictions[i]}\n`);
  fs.writeFileSync(outPath, lines.join(""), "utf-8");
  return sources.length;
}
