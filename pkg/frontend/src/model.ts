/**
 * Encoder-decoder translation models over digit tokens.
 *
 * Two variants:
 *  - "plain-recurrent": classic LSTM seq2seq, the encoder's final state
 *    initializes the decoder.
 *  - "attention": GRU encoder/decoder with dot-product attention over
 *    the encoder outputs; conditioning flows entirely through attention
 *    (tfjs cannot combine an explicit RNN initial state with a second
 *    consumer of the encoder sequence in one functional graph).
 *
 * Sources are always right-padded to the model's training window so
 * preprocessing is identical at train and predict time and decoding is
 * batch-size independent.  Decoding is greedy, batched, and re-runs the
 * decoder on the whole prefix each step; sequences are a few dozen
 * tokens, so the quadratic cost stays affordable on the CPU backend.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import * as tf from "@tensorflow/tfjs";

import { EOS, PAD, SOS, Vocab, buildVocab, decodeIds } from "./vocab.js";

export type ModelKind = "plain-recurrent" | "attention";

export interface ModelConfig {
  kind: ModelKind;
  vocab: string[]; // digit alphabet, not the special tokens
  embeddingDim: number;
  hiddenUnits: number;
  seed: number;
  /** Encoder input width; sources are padded (or truncated) to this. */
  srcWindow: number;
  /** Teacher-forcing width: longest training target plus the EOS slot. */
  tgtWindow: number;
}

export function buildModel(cfg: ModelConfig): tf.LayersModel {
  const vocabSize = buildVocab(cfg.vocab).size;
  const glorot = (offset: number) =>
    tf.initializers.glorotUniform({ seed: cfg.seed + offset });
  const orthogonal = (offset: number) =>
    tf.initializers.orthogonal({ gain: 1, seed: cfg.seed + offset });

  const encIn = tf.input({ shape: [null], name: "encoder_tokens" });
  const decIn = tf.input({ shape: [null], name: "decoder_tokens" });
  const encEmb = tf.layers
    .embedding({
      inputDim: vocabSize,
      outputDim: cfg.embeddingDim,
      embeddingsInitializer: glorot(1),
      name: "encoder_embedding",
    })
    .apply(encIn) as tf.SymbolicTensor;
  const decEmb = tf.layers
    .embedding({
      inputDim: vocabSize,
      outputDim: cfg.embeddingDim,
      embeddingsInitializer: glorot(2),
      name: "decoder_embedding",
    })
    .apply(decIn) as tf.SymbolicTensor;

  let features: tf.SymbolicTensor;
  if (cfg.kind === "plain-recurrent") {
    const [, h, c] = tf.layers
      .lstm({
        units: cfg.hiddenUnits,
        returnState: true,
        kernelInitializer: glorot(3),
        recurrentInitializer: orthogonal(4),
        name: "encoder_rnn",
      })
      .apply(encEmb) as tf.SymbolicTensor[];
    features = tf.layers
      .lstm({
        units: cfg.hiddenUnits,
        returnSequences: true,
        kernelInitializer: glorot(5),
        recurrentInitializer: orthogonal(6),
        name: "decoder_rnn",
      })
      .apply([decEmb, h, c]) as tf.SymbolicTensor;
  } else if (cfg.kind === "attention") {
    const encSeq = tf.layers
      .gru({
        units: cfg.hiddenUnits,
        returnSequences: true,
        kernelInitializer: glorot(3),
        recurrentInitializer: orthogonal(4),
        name: "encoder_rnn",
      })
      .apply(encEmb) as tf.SymbolicTensor;
    const decSeq = tf.layers
      .gru({
        units: cfg.hiddenUnits,
        returnSequences: true,
        kernelInitializer: glorot(5),
        recurrentInitializer: orthogonal(6),
        name: "decoder_rnn",
      })
      .apply(decEmb) as tf.SymbolicTensor;
    const scores = tf.layers
      .dot({ axes: [2, 2], name: "attention_scores" })
      .apply([decSeq, encSeq]) as tf.SymbolicTensor;
    const weights = tf.layers
      .activation({ activation: "softmax", name: "attention_weights" })
      .apply(scores) as tf.SymbolicTensor;
    const context = tf.layers
      .dot({ axes: [2, 1], name: "attention_context" })
      .apply([weights, encSeq]) as tf.SymbolicTensor;
    const merged = tf.layers
      .concatenate({ name: "context_merge" })
      .apply([context, decSeq]) as tf.SymbolicTensor;
    features = tf.layers
      .dense({
        units: cfg.hiddenUnits,
        activation: "tanh",
        kernelInitializer: glorot(7),
        name: "attention_mix",
      })
      .apply(merged) as tf.SymbolicTensor;
  } else {
    throw new Error(`unknown model kind ${JSON.stringify(cfg.kind)}`);
  }

  const probs = tf.layers
    .dense({
      units: vocabSize,
      activation: "softmax",
      kernelInitializer: glorot(8),
      name: "token_output",
    })
    .apply(features) as tf.SymbolicTensor;
  return tf.model({ inputs: [encIn, decIn], outputs: probs });
}

/** Hard cap on decoded length so decoding always terminates. */
export function decodeCap(sourceLength: number): number {
  return 2 * sourceLength + 4;
}

function encodeWindow(source: string, vocab: Vocab, window: number): number[] {
  const out = new Array<number>(window).fill(PAD);
  const n = Math.min(source.length, window);
  for (let i = 0; i < n; i++) {
    const id = vocab.index.get(source[i]);
    if (id === undefined) {
      throw new Error(`source character ${JSON.stringify(source[i])} not in vocab`);
    }
    out[i] = id;
  }
  return out;
}

/**
 * Greedy decode for a batch of sources in lockstep.  Each row stops at
 * EOS or at its own 2*len+4 cap; finished rows keep receiving PAD.
 */
export function greedyDecodeBatch(
  model: tf.LayersModel,
  cfg: ModelConfig,
  vocab: Vocab,
  sources: string[]
): string[] {
  if (sources.length === 0) return [];
  const rows = sources.length;
  const encFlat = new Int32Array(rows * cfg.srcWindow);
  sources.forEach((s, r) => {
    encFlat.set(encodeWindow(s, vocab, cfg.srcWindow), r * cfg.srcWindow);
  });
  const enc = tf.tensor2d(encFlat, [rows, cfg.srcWindow], "int32");

  const caps = sources.map((s) => decodeCap(s.length));
  const maxCap = Math.max(...caps);
  const decRows: number[][] = sources.map(() => [SOS]);
  const done: boolean[] = sources.map(() => false);
  const emitted: number[] = sources.map(() => 0);

  for (let step = 0; step < maxCap; step++) {
    if (done.every(Boolean)) break;
    const width = decRows[0].length;
    const next = tf.tidy(() => {
      const decFlat = new Int32Array(rows * width);
      decRows.forEach((r, i) => decFlat.set(r, i * width));
      const dec = tf.tensor2d(decFlat, [rows, width], "int32");
      const probs = model.predict([enc, dec]) as tf.Tensor3D;
      const last = probs.slice(
        [0, width - 1, 0],
        [rows, 1, probs.shape[2] as number]
      );
      return last.argMax(-1).dataSync();
    });
    for (let r = 0; r < rows; r++) {
      if (done[r]) {
        decRows[r].push(PAD);
        continue;
      }
      const id = next[r];
      decRows[r].push(id);
      if (id === EOS) {
        done[r] = true;
        continue;
      }
      emitted[r] += 1;
      if (emitted[r] >= caps[r]) done[r] = true;
    }
  }
  enc.dispose();
  return decRows.map((ids) => decodeIds(ids, vocab));
}

export function greedyDecode(
  model: tf.LayersModel,
  cfg: ModelConfig,
  vocab: Vocab,
  source: string
): string {
  return greedyDecodeBatch(model, cfg, vocab, [source])[0];
}

// Weights travel as base64 float32 blobs inside a JSON file next to the
// architecture config; tfjs' own file:// saver needs the native backend.

const CONFIG_FILE = "config.json";
const WEIGHTS_FILE = "weights.json";

interface SavedWeight {
  shape: number[];
  b64: string;
}

export async function saveModel(
  model: tf.LayersModel,
  cfg: ModelConfig,
  dir: string
): Promise<void> {
  fs.mkdirSync(dir, { recursive: true });
  const weights: SavedWeight[] = [];
  for (const tensor of model.getWeights()) {
    const data = (await tensor.data()) as Float32Array;
    weights.push({
      shape: tensor.shape.slice(),
      b64: Buffer.from(data.buffer, data.byteOffset, data.byteLength).toString(
        "base64"
      ),
    });
  }
  fs.writeFileSync(path.join(dir, CONFIG_FILE), JSON.stringify(cfg, null, 2));
  fs.writeFileSync(path.join(dir, WEIGHTS_FILE), JSON.stringify(weights));
}

export function loadModel(dir: string): { model: tf.LayersModel; cfg: ModelConfig } {
  const cfgPath = path.join(dir, CONFIG_FILE);
  if (!fs.existsSync(cfgPath)) {
    throw new Error(`no model config at ${cfgPath}`);
  }
  const cfg = JSON.parse(fs.readFileSync(cfgPath, "utf-8")) as ModelConfig;
  const saved = JSON.parse(
    fs.readFileSync(path.join(dir, WEIGHTS_FILE), "utf-8")
  ) as SavedWeight[];
  const model = buildModel(cfg);
  const current = model.getWeights();
  if (current.length !== saved.length) {
    throw new Error(
      `saved weights (${saved.length}) do not match architecture (${current.length})`
    );
  }
  model.setWeights(
    saved.map((w) => {
      const buf = Buffer.from(w.b64, "base64");
      const data = new Float32Array(buf.buffer, buf.byteOffset, buf.byteLength / 4);
      return tf.tensor(data, w.shape);
    })
  );
  return { model, cfg };
}
