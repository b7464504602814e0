/**
 * End-to-end reproduction pipeline.
 *
 * Generates desk-scale datasets with the primary CLI, trains both model
 * kinds on the forward task (plus attention on the reversed task),
 * scores every prediction file with the primary harness, and probes the
 * true orbit.  The summary records what the harness reported — error
 * counts, token accuracy, first failure step, exit codes — and makes no
 * verdict of its own.
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";

import { ModelKind } from "./model.js";
import { predictFile, predictSources } from "./predict.js";
import { DESK_DEFAULTS, train } from "./train.js";

export interface ReproduceConfig {
  workDir: string;
  trainSize: number;
  testSize: number;
  maxLen: number;
  epochs: number;
  embeddingDim: number;
  hiddenUnits: number;
  batchSize: number;
  seed: number;
  probeSteps: number;
  learningRate: number;
  lnsBin: string;
}

export const REPRODUCE_DEFAULTS: ReproduceConfig = {
  workDir: "reproduction",
  trainSize: 100_000,
  testSize: 10_000,
  maxLen: 15,
  epochs: DESK_DEFAULTS.epochs,
  embeddingDim: DESK_DEFAULTS.embeddingDim,
  hiddenUnits: DESK_DEFAULTS.hiddenUnits,
  batchSize: DESK_DEFAULTS.batchSize,
  seed: DESK_DEFAULTS.seed,
  probeSteps: 10,
  learningRate: DESK_DEFAULTS.learningRate,
  lnsBin: "lns",
};

interface HarnessResult {
  exitCode: number;
  report: Record<string, unknown>;
}

export interface ModelSummary {
  kind: ModelKind;
  direction: "forward" | "reversed";
  losses: number[];
  wallTimeSec: number;
  score: HarnessResult;
  probe?: HarnessResult;
}

export interface Summary {
  config: ReproduceConfig;
  models: ModelSummary[];
}

function runStage(
  stage: string,
  bin: string,
  args: string[],
  okCodes: number[] = [0]
): { status: number; stdout: string } {
  const proc = spawnSync(bin, args, { encoding: "utf-8" });
  if (proc.error) {
    throw new Error(`stage ${stage}: cannot run ${bin} (${proc.error.message})`);
  }
  const status = proc.status ?? -1;
  if (!okCodes.includes(status)) {
    throw new Error(
      `stage ${stage}: ${bin} ${args.join(" ")} exited ${status}\n${proc.stderr}`
    );
  }
  return { status, stdout: proc.stdout };
}

function readReport(stage: string, reportPath: string): Record<string, unknown> {
  if (!fs.existsSync(reportPath)) {
    throw new Error(`stage ${stage}: harness wrote no report at ${reportPath}`);
  }
  return JSON.parse(fs.readFileSync(reportPath, "utf-8"));
}

export async function reproduce(
  cfg: ReproduceConfig,
  log: (msg: string) => void = console.log
): Promise<Summary> {
  fs.mkdirSync(cfg.workDir, { recursive: true });
  const dataDir = (direction: string) => path.join(cfg.workDir, `data-${direction}`);

  for (const direction of ["forward", "reversed"] as const) {
    log(`[gen-data] ${direction} ${cfg.trainSize}/${cfg.testSize}`);
    runStage("gen-data", cfg.lnsBin, [
      "gen-data",
      "--train", String(cfg.trainSize),
      "--test", String(cfg.testSize),
      "--max-len", String(cfg.maxLen),
      "--seed", String(cfg.seed),
      "--direction", direction,
      "--data-format", "spaced-tsv",
      "--out", dataDir(direction),
    ]);
    runStage("check-data", cfg.lnsBin, ["check-data", dataDir(direction)]);
  }

  const models: ModelSummary[] = [];
  const jobs: Array<{ kind: ModelKind; direction: "forward" | "reversed" }> = [
    { kind: "plain-recurrent", direction: "forward" },
    { kind: "attention", direction: "forward" },
    { kind: "attention", direction: "reversed" },
  ];
  for (const job of jobs) {
    const tag = `${job.kind}-${job.direction}`;
    const modelDir = path.join(cfg.workDir, `model-${tag}`);
    log(`[train] ${tag}`);
    const { record, model, cfg: modelCfg, vocab } = await train(
      {
        datasetDir: dataDir(job.direction),
        modelKind: job.kind,
        embeddingDim: cfg.embeddingDim,
        hiddenUnits: cfg.hiddenUnits,
        batchSize: cfg.batchSize,
        epochs: cfg.epochs,
        seed: cfg.seed,
        learningRate: cfg.learningRate,
      },
      modelDir,
      (msg) => log(`  ${msg}`)
    );

    log(`[predict] ${tag}`);
    const testFile = path.join(dataDir(job.direction), "test.tsv");
    const predPath = path.join(cfg.workDir, `preds-${tag}.tsv`);
    predictFile(model, modelCfg, vocab, testFile, predPath, (msg) => log(msg));

    log(`[score] ${tag}`);
    const reportPath = path.join(cfg.workDir, `score-${tag}.json`);
    const score = runStage(
      "score",
      cfg.lnsBin,
      ["score", testFile, predPath, "--out", reportPath],
      [0, 1]
    );
    const summary: ModelSummary = {
      kind: job.kind,
      direction: job.direction,
      losses: record.losses,
      wallTimeSec: record.wallTimeSec,
      score: { exitCode: score.status, report: readReport("score", reportPath) },
    };

    if (job.direction === "forward") {
      log(`[probe] ${tag}`);
      const orbit = runStage("prefix", cfg.lnsBin, [
        "prefix",
        String(cfg.probeSteps),
      ]).stdout.trim().split("\n");
      const probePreds = predictSources(model, modelCfg, vocab, orbit);
      const probePath = path.join(cfg.workDir, `probe-${tag}.tsv`);
      fs.writeFileSync(
        probePath,
        orbit.map((t, i) => `${t}\t${probePreds[i]}\n`).join(""),
        "utf-8"
      );
      const probeReport = path.join(cfg.workDir, `probe-${tag}.json`);
      const probe = runStage(
        "probe",
        cfg.lnsBin,
        [
          "probe", probePath,
          "--n", String(cfg.probeSteps),
          "--out", probeReport,
        ],
        [0, 1]
      );
      summary.probe = {
        exitCode: probe.status,
        report: readReport("probe", probeReport),
      };
    }
    models.push(summary);
    model.dispose();
  }

  const summary: Summary = { config: cfg, models };
  const summaryPath = path.join(cfg.workDir, "summary.json");
  fs.writeFileSync(summaryPath, JSON.stringify(summary, null, 2), "utf-8");
  log(`[done] summary at ${summaryPath}`);
  return summary;
}
