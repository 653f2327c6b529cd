#!/usr/bin/env node
import { Command } from "commander";

import { DEFAULT_HASH_DIM, DEFAULT_MODEL, loadEncoder } from "./encoder.js";
import { exportEmbeddings } from "./export.js";

const program = new Command();

program
  .name("saev-export")
  .description("Export sentence embeddings into the SAEV binary format");

program
  .command("export")
  .requiredOption("--in <file>", "sentence file, one sentence per line")
  .requiredOption("--out <file>", "SAEV output file")
  .option("--model <name>", "encoder model name, or 'hash' for the built-in", DEFAULT_MODEL)
  .option("--batch <n>", "batch size for inference", (v) => parseInt(v, 10), 32)
  .option("--dim <n>", "dimension of the built-in hash model", (v) => parseInt(v, 10), DEFAULT_HASH_DIM)
  .action(async (opts) => {
    try {
      const encoder = await loadEncoder(opts.model, { hashDim: opts.dim });
      const { count, dim } = await exportEmbeddings(opts.in, opts.out, encoder, opts.batch);
      console.log(`wrote ${opts.out}: ${count} vectors, dim ${dim}`);
    } catch (err) {
      console.error(`saev-export: ${err instanceof Error ? err.message : err}`);
      process.exitCode = 1;
    }
  });

program.parseAsync(process.argv);
