/**
 * Command line for the translator: train, predict, reproduce.
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { loadModel, ModelKind } from "./model.js";
import { predictFile } from "./predict.js";
import { REPRODUCE_DEFAULTS, reproduce } from "./reproduce.js";
import { DESK_DEFAULTS, train } from "./train.js";
import { buildVocab } from "./vocab.js";

const kinds: ReadonlyArray<ModelKind> = ["plain-recurrent", "attention"];

await yargs(hideBin(process.argv))
  .scriptName("lns-translator")
  .command(
    "train",
    "train one model on a generated dataset",
    (y) =>
      y
        .option("data", { type: "string", demandOption: true, describe: "dataset dir" })
        .option("kind", { choices: kinds, default: "attention" as ModelKind })
        .option("embedding-dim", { type: "number", default: DESK_DEFAULTS.embeddingDim })
        .option("hidden-units", { type: "number", default: DESK_DEFAULTS.hiddenUnits })
        .option("batch-size", { type: "number", default: DESK_DEFAULTS.batchSize })
        .option("epochs", { type: "number", default: DESK_DEFAULTS.epochs })
        .option("seed", { type: "number", default: DESK_DEFAULTS.seed })
        .option("learning-rate", { type: "number", default: DESK_DEFAULTS.learningRate })
        .option("max-pairs", { type: "number" })
        .option("out", { type: "string", demandOption: true, describe: "model dir" }),
    async (args) => {
      const { record } = await train(
        {
          datasetDir: args.data,
          modelKind: args.kind,
          embeddingDim: args.embeddingDim,
          hiddenUnits: args.hiddenUnits,
          batchSize: args.batchSize,
          epochs: args.epochs,
          seed: args.seed,
          learningRate: args.learningRate,
          maxTrainPairs: args.maxPairs,
        },
        args.out
      );
      console.log(
        `saved ${args.kind} to ${record.modelDir} ` +
          `(${record.wallTimeSec.toFixed(1)} s, final loss ${record.losses.at(-1)?.toExponential(4)})`
      );
    }
  )
  .command(
    "predict",
    "write source-aligned predictions for a sources file",
    (y) =>
      y
        .option("model", { type: "string", demandOption: true, describe: "model dir" })
        .option("sources", { type: "string", demandOption: true })
        .option("out", { type: "string", demandOption: true }),
    async (args) => {
      const { model, cfg } = loadModel(args.model);
      const vocab = buildVocab(cfg.vocab);
      const n = predictFile(model, cfg, vocab, args.sources, args.out, console.log);
      console.log(`wrote ${n} predictions to ${args.out}`);
    }
  )
  .command(
    "reproduce",
    "dataset -> train both kinds -> score + probe with the lns harness",
    (y) =>
      y
        .option("work", { type: "string", default: REPRODUCE_DEFAULTS.workDir })
        .option("train", { type: "number", default: REPRODUCE_DEFAULTS.trainSize })
        .option("test", { type: "number", default: REPRODUCE_DEFAULTS.testSize })
        .option("max-len", { type: "number", default: REPRODUCE_DEFAULTS.maxLen })
        .option("epochs", { type: "number", default: REPRODUCE_DEFAULTS.epochs })
        .option("embedding-dim", { type: "number", default: REPRODUCE_DEFAULTS.embeddingDim })
        .option("hidden-units", { type: "number", default: REPRODUCE_DEFAULTS.hiddenUnits })
        .option("batch-size", { type: "number", default: REPRODUCE_DEFAULTS.batchSize })
        .option("seed", { type: "number", default: REPRODUCE_DEFAULTS.seed })
        .option("probe-steps", { type: "number", default: REPRODUCE_DEFAULTS.probeSteps })
        .option("learning-rate", { type: "number", default: REPRODUCE_DEFAULTS.learningRate })
        .option("lns-bin", { type: "string", default: REPRODUCE_DEFAULTS.lnsBin }),
    async (args) => {
      await reproduce({
        workDir: args.work,
        trainSize: args.train,
        testSize: args.test,
        maxLen: args.maxLen,
        epochs: args.epochs,
        embeddingDim: args.embeddingDim,
        hiddenUnits: args.hiddenUnits,
        batchSize: args.batchSize,
        seed: args.seed,
        probeSteps: args.probeSteps,
        learningRate: args.learningRate,
        lnsBin: args.lnsBin,
      });
    }
  )
  .demandCommand(1)
  .strict()
  .showHelpOnFail(false)
  .help()
  .parseAsync();
