import * as fs from "node:fs";

import { Encoder } from "./encoder.js";
import { writeSaevFile } from "./format.js";

/**
 * Split a sentence file into lines the same way the alignment engine
 * does: LF or CRLF endings, the trailing newline adds no sentence,
 * interior blank lines stay.
 */
export function readSentences(inPath: string): string[] {
  const text = fs.readFileSync(inPath, "utf8");
  if (text === "") {
    return [];
  }
  const lines = text.split("\n");
  if (lines[lines.length - 1] === "") {
    lines.pop();
  }
  return lines.map((line) => (line.endsWith("\r") ? line.slice(0, -1) : line));
}

export interface ExportResult {
  count: number;
  dim: number;
}

/**
 * Encode every line of `inPath` and write the SAEV file to `outPath`.
 * Row i corresponds to line i. An empty input produces a valid file
 * with count 0.
 */
export async function exportEmbeddings(
  inPath: string,
  outPath: string,
  encoder: Encoder,
  batchSize: number
): Promise<ExportResult> {
  if (batchSize < 1) {
    throw new Error("batch size must be >= 1");
  }
  const sentences = readSentences(inPath);
  const rows: Float32Array[] = [];
  for (let start = 0; start < sentences.length; start += batchSize) {
    const batch = sentences.slice(start, start + batchSize);
    rows.push(...(await encoder.encode(batch)));
  }
  writeSaevFile(outPath, rows, encoder.dim);
  return { count: rows.length, dim: encoder.dim };
}
