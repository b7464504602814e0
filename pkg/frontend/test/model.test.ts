import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import * as tf from "@tensorflow/tfjs";
import { afterAll, describe, expect, it } from "vitest";

import {
  ModelConfig,
  buildModel,
  decodeCap,
  greedyDecode,
  greedyDecodeBatch,
  loadModel,
  saveModel,
} from "../src/model.js";
import { buildVocab } from "../src/vocab.js";

const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "lns-model-"));
afterAll(() => fs.rmSync(tmp, { recursive: true, force: true }));

function tinyConfig(kind: ModelConfig["kind"]): ModelConfig {
  return {
    kind,
    vocab: ["1", "2", "3"],
    embeddingDim: 8,
    hiddenUnits: 12,
    seed: 5,
    srcWindow: 6,
    tgtWindow: 9,
  };
}

describe("model building", () => {
  it.each(["plain-recurrent", "attention"] as const)(
    "%s produces per-step distributions over the vocab",
    (kind) => {
      const model = buildModel(tinyConfig(kind));
      const enc = tf.zeros([2, 6], "int32");
      const dec = tf.zeros([2, 4], "int32");
      const out = model.predict([enc, dec]) as tf.Tensor3D;
      expect(out.shape).toEqual([2, 4, 6]);
      const sums = out.sum(-1).dataSync();
      for (const s of sums) expect(s).toBeCloseTo(1, 4);
      model.dispose();
    }
  );

  it("rejects unknown kinds", () => {
    expect(() => buildModel({ ...tinyConfig("attention"), kind: "mlp" as never }))
      .toThrow(/unknown model kind/);
  });

  it("is deterministic for a fixed seed", () => {
    const a = buildModel(tinyConfig("attention"));
    const b = buildModel(tinyConfig("attention"));
    const wa = a.getWeights().map((w) => w.dataSync());
    const wb = b.getWeights().map((w) => w.dataSync());
    wa.forEach((w, i) => expect([...w]).toEqual([...wb[i]]));
    a.dispose();
    b.dispose();
  });
});

describe("greedy decoding", () => {
  it("caps output length at 2*len+4 and stays in the alphabet", () => {
    const cfg = tinyConfig("attention");
    const vocab = buildVocab(cfg.vocab);
    const model = buildModel(cfg);
    for (const source of ["1", "123", "331122"]) {
      const out = greedyDecode(model, cfg, vocab, source);
      expect(out.length).toBeLessThanOrEqual(decodeCap(source.length));
      for (const ch of out) expect(cfg.vocab).toContain(ch);
    }
    model.dispose();
  });

  it("batched decode equals one-at-a-time decode", () => {
    const cfg = tinyConfig("plain-recurrent");
    const vocab = buildVocab(cfg.vocab);
    const model = buildModel(cfg);
    const sources = ["1", "22", "313", "1132", "23"];
    const batched = greedyDecodeBatch(model, cfg, vocab, sources);
    const single = sources.map((s) => greedyDecode(model, cfg, vocab, s));
    expect(batched).toEqual(single);
    model.dispose();
  });

  it("truncates over-window sources instead of crashing", () => {
    const cfg = tinyConfig("attention");
    const vocab = buildVocab(cfg.vocab);
    const model = buildModel(cfg);
    const long = "123123123123"; // twice the window
    const out = greedyDecode(model, cfg, vocab, long);
    expect(out.length).toBeLessThanOrEqual(decodeCap(long.length));
    model.dispose();
  });
});

describe("save / load", () => {
  it("round trips weights and behavior", async () => {
    const cfg = tinyConfig("attention");
    const vocab = buildVocab(cfg.vocab);
    const model = buildModel(cfg);
    const dir = path.join(tmp, "m1");
    await saveModel(model, cfg, dir);
    const { model: loaded, cfg: loadedCfg } = loadModel(dir);
    expect(loadedCfg).toEqual(cfg);
    const sources = ["1", "2212", "331"];
    expect(greedyDecodeBatch(loaded, loadedCfg, vocab, sources)).toEqual(
      greedyDecodeBatch(model, cfg, vocab, sources)
    );
    model.dispose();
    loaded.dispose();
  });

  it("fails loudly on a missing model dir", () => {
    expect(() => loadModel(path.join(tmp, "nope"))).toThrow(/no model config/);
  });
});
