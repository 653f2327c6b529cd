import * as fs from "node:fs";
import * as path from "node:path";

export const MAGIC = "SAEV";
export const VERSION = 1;
export const HEADER_BYTES = 16;

/**
 * Serialize unit vectors into the SAEV v1 layout: "SAEV", then u32
 * version / count / dim (little-endian), then count*dim float32 values
 * row-major.
 */
export function encodeSaev(rows: Float32Array[], dim: number): Buffer {
  const header = Buffer.alloc(HEADER_BYTES);
  header.write(MAGIC, 0, "ascii");
  header.writeUInt32LE(VERSION, 4);
  header.writeUInt32LE(rows.length, 8);
  header.writeUInt32LE(dim, 12);
  const payload = Buffer.alloc(4 * rows.length * dim);
  for (let i = 0; i < rows.length; i++) {
    const row = rows[i];
    if (row.length !== dim) {
      throw new Error(`row ${i} has ${row.length} values, expected ${dim}`);
    }
    for (let k = 0; k < dim; k++) {
      payload.writeFloatLE(row[k], 4 * (i * dim + k));
    }
  }
  return Buffer.concat([header, payload]);
}

/** Write a SAEV file atomically (temp file + rename). */
export function writeSaevFile(outPath: string, rows: Float32Array[], dim: number): void {
  const data = encodeSaev(rows, dim);
  const tmpPath = path.join(
    path.dirname(outPath),
    `.${path.basename(outPath)}.tmp-${process.pid}`
  );
  fs.writeFileSync(tmpPath, data);
  fs.renameSync(tmpPath, outPath);
}

export interface SaevContents {
  count: number;
  dim: number;
  rows: Float32Array[];
}

/** Parse a SAEV file; used by the test suite to verify round-trips. */
export function readSaevFile(inPath: string): SaevContents {
  const data = fs.readFileSync(inPath);
  if (data.length < HEADER_BYTES || data.toString("ascii", 0, 4) !== MAGIC) {
    throw new Error(`${inPath}: not a SAEV file`);
  }
  const version = data.readUInt32LE(4);
  if (version !== VERSION) {
    throw new Error(`${inPath}: unsupported version ${version}`);
  }
  const count = data.readUInt32LE(8);
  const dim = data.readUInt32LE(12);
  if (data.length !== HEADER_BYTES + 4 * count * dim) {
    throw new Error(`${inPath}: truncated payload`);
  }
  const rows: Float32Array[] = [];
  for (let i = 0; i < count; i++) {
    const row = new Float32Array(dim);
    for (let k = 0; k < dim; k++) {
      row[k] = data.readFloatLE(HEADER_BYTES + 4 * (i * dim + k));
    }
    rows.push(row);
  }
  return { count, dim, rows };
}
