import { hashTrigramVector } from "./hash.js";

export interface Encoder {
  /** Output width; known before any sentence is encoded. */
  readonly dim: number;
  /** Embed a batch, one unit-norm row per sentence, in order. */
  encode(sentences: string[]): Promise<Float32Array[]>;
}

export interface EncoderOptions {
  /** Bucket count for the built-in hash model. */
  hashDim?: number;
}

function toUnitFloat32(row: Float64Array | number[]): Float32Array {
  let sumSquares = 0.0;
  for (const v of row) {
    sumSquares += v * v;
  }
  const norm = Math.sqrt(sumSquares);
  const out = new Float32Array(row.length);
  if (norm === 0) {
    throw new Error("encoder produced a zero vector");
  }
  for (let k = 0; k < row.length; k++) {
    out[k] = row[k] / norm;
  }
  return out;
}

class HashEncoder implements Encoder {
  constructor(readonly dim: number) {}

  async encode(sentences: string[]): Promise<Float32Array[]> {
    return sentences.map((s) => toUnitFloat32(hashTrigramVector(s, this.dim)));
  }
}

class TransformersEncoder implements Encoder {
  private constructor(
    private readonly extractor: any,
    readonly dim: number
  ) {}

  static async load(modelName: string): Promise<TransformersEncoder> {
    // Resolved at runtime so the transformers stack stays optional.
    const moduleName = "@huggingface/transformers";
    let pipeline: any;
    try {
      ({ pipeline } = await import(moduleName));
    } catch (err) {
      throw new Error(
        "@huggingface/transformers is not installed; install it or use --model hash"
      );
    }
    // fp32 keeps repeated exports byte-identical on the same machine.
    const extractor = await pipeline("feature-extraction", modelName, {
      dtype: "fp32",
    });
    const probe = await extractor("dimension probe", {
      pooling: "mean",
      normalize: true,
    });
    const dim = probe.dims[probe.dims.length - 1];
    return new TransformersEncoder(extractor, dim);
  }

  async encode(sentences: string[]): Promise<Float32Array[]> {
    const output = await this.extractor(sentences, {
      pooling: "mean",
      normalize: true,
    });
    const flat: Float32Array = output.data;
    const rows: Float32Array[] = [];
    for (let i = 0; i < sentences.length; i++) {
      rows.push(toUnitFloat32(Array.from(flat.slice(i * this.dim, (i + 1) * this.dim))));
    }
    return rows;
  }
}

export const DEFAULT_MODEL = "Xenova/LaBSE";
export const DEFAULT_HASH_DIM = 256;

/**
 * "hash" selects the built-in deterministic trigram model; anything else
 * is treated as a feature-extraction model name for transformers.js.
 */
export async function loadEncoder(
  modelName: string,
  options: EncoderOptions = {}
): Promise<Encoder> {
  if (modelName === "hash") {
    const dim = options.hashDim ?? DEFAULT_HASH_DIM;
    if (dim < 16) {
      throw new Error("hash model dimension must be >= 16");
    }
    return new HashEncoder(dim);
  }
  return TransformersEncoder.load(modelName);
}
