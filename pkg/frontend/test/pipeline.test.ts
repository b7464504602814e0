/**
 * Integration with the primary harness: datasets come from `lns
 * gen-data`, predictions go back through `lns score` / `lns probe`.
 * Training runs here are tiny; the desk-scale reproduction lives behind
 * `npm run reproduce`.
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { loadModel } from "../src/model.js";
import { predictFile, predictSources } from "../src/predict.js";
import { TrainSpec, train } from "../src/train.js";
import { buildVocab } from "../src/vocab.js";

const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "lns-pipeline-"));
afterAll(() => fs.rmSync(tmp, { recursive: true, force: true }));

function lns(...args: string[]): { status: number; stdout: string } {
  const proc = spawnSync("lns", args, { encoding: "utf-8" });
  if (proc.error) throw new Error(`lns unavailable: ${proc.error.message}`);
  return { status: proc.status ?? -1, stdout: proc.stdout };
}

const dataDir = path.join(tmp, "data");

function tinySpec(over: Partial<TrainSpec> = {}): TrainSpec {
  return {
    datasetDir: dataDir,
    modelKind: "attention",
    embeddingDim: 24,
    hiddenUnits: 48,
    batchSize: 32,
    epochs: 4,
    seed: 3,
    learningRate: 0.01,
    ...over,
  };
}

beforeAll(() => {
  const gen = lns(
    "gen-data",
    "--train", "300",
    "--test", "40",
    "--max-len", "5",
    "--seed", "11",
    "--data-format", "spaced-tsv",
    "--out", dataDir
  );
  expect(gen.status).toBe(0);
});

describe("training", () => {
  it("attention loss decreases and the model round trips from disk", async () => {
    const modelDir = path.join(tmp, "model-att");
    const { record, model, cfg, vocab } = await train(tinySpec(), modelDir, () => {});
    expect(record.losses).toHaveLength(4);
    expect(record.losses.at(-1)!).toBeLessThan(record.losses[0] * 0.7);
    expect(record.trainPairs).toBe(300);

    const predPath = path.join(tmp, "preds-att.tsv");
    const n = predictFile(model, cfg, vocab, path.join(dataDir, "test.tsv"), predPath);
    expect(n).toBe(40);
    model.dispose();

    // the saved model must predict identically
    const { model: loaded, cfg: loadedCfg } = loadModel(modelDir);
    const predPath2 = path.join(tmp, "preds-att2.tsv");
    predictFile(loaded, loadedCfg, buildVocab(loadedCfg.vocab),
      path.join(dataDir, "test.tsv"), predPath2);
    loaded.dispose();
    expect(fs.readFileSync(predPath2)).toEqual(fs.readFileSync(predPath));

    // the primary harness consumes the prediction file and reports totals
    const reportPath = path.join(tmp, "report-att.json");
    const score = lns("score", path.join(dataDir, "test.tsv"), predPath,
      "--out", reportPath);
    expect([0, 1]).toContain(score.status);
    const report = JSON.parse(fs.readFileSync(reportPath, "utf-8"));
    expect(report.kind).toBe("eval");
    expect(report.total).toBe(40);
    expect(report.errors === 0).toBe(score.status === 0);
  });

  it("plain-recurrent also trains", async () => {
    const { record, model } = await train(
      tinySpec({ modelKind: "plain-recurrent", epochs: 2 }),
      path.join(tmp, "model-plain"),
      () => {}
    );
    expect(record.losses).toHaveLength(2);
    expect(record.losses[1]).toBeLessThan(record.losses[0]);
    model.dispose();
  });

  it("same seed retrains to identical predictions", async () => {
    const a = await train(tinySpec({ epochs: 1 }), path.join(tmp, "det-a"), () => {});
    const b = await train(tinySpec({ epochs: 1 }), path.join(tmp, "det-b"), () => {});
    const sources = ["1", "22", "331", "1213", "31122"];
    const pa = predictSources(a.model, a.cfg, a.vocab, sources);
    const pb = predictSources(b.model, b.cfg, b.vocab, sources);
    a.model.dispose();
    b.model.dispose();
    expect(pa).toEqual(pb);
  });

  it("an untrained model still emits a valid prediction file", async () => {
    const { model, cfg, vocab } = await train(
      tinySpec({ epochs: 0 }),
      path.join(tmp, "model-zero"),
      () => {}
    );
    const predPath = path.join(tmp, "preds-zero.tsv");
    const n = predictFile(model, cfg, vocab, path.join(dataDir, "test.tsv"), predPath);
    model.dispose();
    expect(n).toBe(40);
    const lines = fs.readFileSync(predPath, "utf-8").trim().split("\n");
    expect(lines).toHaveLength(40);
    for (const line of lines) expect(line).toMatch(/^[123]+\t[123]*$/);
    const score = lns("score", path.join(dataDir, "test.tsv"), predPath);
    expect([0, 1]).toContain(score.status); // graded, not crashed
  });
});

describe("true-orbit probe", () => {
  it("probe predictions flow through lns probe", async () => {
    const { model, cfg, vocab } = await train(
      tinySpec({ epochs: 1 }),
      path.join(tmp, "model-probe"),
      () => {}
    );
    const orbit = lns("prefix", "8").stdout.trim().split("\n");
    const preds = predictSources(model, cfg, vocab, orbit);
    model.dispose();
    const probePath = path.join(tmp, "probe.tsv");
    fs.writeFileSync(probePath, orbit.map((t, i) => `${t}\t${preds[i]}\n`).join(""));
    const reportPath = path.join(tmp, "probe.json");
    const probe = lns("probe", probePath, "--n", "8", "--out", reportPath);
    expect([0, 1]).toContain(probe.status);
    const report = JSON.parse(fs.readFileSync(reportPath, "utf-8"));
    expect(report.kind).toBe("probe");
    expect(report.terms).toHaveLength(8);
  });
});
