/**
 * Teacher-forced training on generated rewrite datasets.
 *
 * Seeded end to end: layer initializers and the per-epoch shuffle both
 * derive from the training seed, and training runs single-threaded on
 * the pure-JS backend, so identical configurations retrain to identical
 * weights.
 */

import * as path from "node:path";

import * as tf from "@tensorflow/tfjs";

import { PairData, dataAlphabet, maxLength, readPairs, seededShuffle } from "./data.js";
import { ModelConfig, ModelKind, buildModel, saveModel } from "./model.js";
import { Vocab, buildVocab, encodeSource, encodeTargetIn, encodeTargetOut } from "./vocab.js";

export interface TrainSpec {
  datasetDir: string;
  modelKind: ModelKind;
  embeddingDim: number;
  hiddenUnits: number;
  batchSize: number;
  epochs: number;
  seed: number;
  learningRate: number;
  /** Optional cap on training pairs; the file order is kept. */
  maxTrainPairs?: number;
}

export const DESK_DEFAULTS = {
  embeddingDim: 64,
  hiddenUnits: 256,
  batchSize: 64,
  epochs: 4,
  seed: 1,
  learningRate: 0.003,
};

export interface RunRecord {
  spec: TrainSpec;
  losses: number[];
  wallTimeSec: number;
  modelDir: string;
  trainPairs: number;
}

export interface TrainedModel {
  record: RunRecord;
  model: tf.LayersModel;
  cfg: ModelConfig;
  vocab: Vocab;
}

interface Encoded {
  enc: Int32Array;
  decIn: Int32Array;
  decOut: Int32Array;
  srcLen: number;
  tgtLen: number;
  count: number;
}

function encodePairs(pairs: PairData, vocab: Vocab): Encoded {
  const srcLen = maxLength(pairs.sources);
  const tgtLen = maxLength(pairs.targets) + 1; // room for SOS / EOS framing
  const count = pairs.sources.length;
  const enc = new Int32Array(count * srcLen);
  const decIn = new Int32Array(count * tgtLen);
  const decOut = new Int32Array(count * tgtLen);
  for (let i = 0; i < count; i++) {
    enc.set(encodeSource(pairs.sources[i], vocab, srcLen), i * srcLen);
    decIn.set(encodeTargetIn(pairs.targets[i], vocab, tgtLen), i * tgtLen);
    decOut.set(encodeTargetOut(pairs.targets[i], vocab, tgtLen), i * tgtLen);
  }
  return { enc, decIn, decOut, srcLen, tgtLen, count };
}

function gatherRows(
  flat: Int32Array,
  width: number,
  rows: number[]
): tf.Tensor2D {
  const out = new Int32Array(rows.length * width);
  rows.forEach((r, i) => {
    out.set(flat.subarray(r * width, (r + 1) * width), i * width);
  });
  return tf.tensor2d(out, [rows.length, width], "int32");
}

export async function train(
  spec: TrainSpec,
  outDir: string,
  log: (msg: string) => void = console.log
): Promise<TrainedModel> {
  const start = Date.now();
  const trainPath = path.join(spec.datasetDir, "train.tsv");
  const pairs = readPairs(trainPath, spec.maxTrainPairs);
  if (pairs.sources.length === 0) {
    throw new Error(`${trainPath} holds no pairs`);
  }
  const alphabet = dataAlphabet(pairs);
  const vocab = buildVocab(alphabet);
  const data = encodePairs(pairs, vocab);
  log(
    `training ${spec.modelKind} on ${data.count} pairs ` +
      `(vocab ${vocab.size}, src<=${data.srcLen}, tgt<=${data.tgtLen - 1})`
  );

  const cfg: ModelConfig = {
    kind: spec.modelKind,
    vocab: alphabet,
    embeddingDim: spec.embeddingDim,
    hiddenUnits: spec.hiddenUnits,
    seed: spec.seed,
    srcWindow: data.srcLen,
    tgtWindow: data.tgtLen,
  };
  const model = buildModel(cfg);
  model.compile({
    optimizer: tf.train.adam(spec.learningRate),
    loss: "categoricalCrossentropy",
  });

  const indices = [...Array(data.count).keys()];
  const losses: number[] = [];
  for (let epoch = 0; epoch < spec.epochs; epoch++) {
    seededShuffle(indices, spec.seed + 1000 * (epoch + 1));
    let lossSum = 0;
    let batches = 0;
    for (let at = 0; at < indices.length; at += spec.batchSize) {
      const rows = indices.slice(at, at + spec.batchSize);
      const enc = gatherRows(data.enc, data.srcLen, rows);
      const dec = gatherRows(data.decIn, data.tgtLen, rows);
      const labels = gatherRows(data.decOut, data.tgtLen, rows);
      const y = tf.oneHot(labels, vocab.size);
      const loss = (await model.trainOnBatch([enc, dec], y)) as number;
      lossSum += loss;
      batches += 1;
      tf.dispose([enc, dec, labels, y]);
    }
    const epochLoss = lossSum / batches;
    losses.push(epochLoss);
    log(`epoch ${epoch + 1}/${spec.epochs}  loss ${epochLoss.toExponential(4)}`);
  }

  await saveModel(model, cfg, outDir);
  const record: RunRecord = {
    spec,
    losses,
    wallTimeSec: (Date.now() - start) / 1000,
    modelDir: outDir,
    trainPairs: data.count,
  };
  return { record, model, cfg, vocab };
}
