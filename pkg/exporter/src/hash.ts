const FNV_OFFSET = 0xcbf29ce484222325n;
const FNV_PRIME = 0x00000100000001b3n;
const FNV_MASK = 0xffffffffffffffffn;

/** 64-bit FNV-1a over raw bytes. */
export function fnv1a64(data: Uint8Array): bigint {
  let h = FNV_OFFSET;
  for (const byte of data) {
    h = ((h ^ BigInt(byte)) * FNV_PRIME) & FNV_MASK;
  }
  return h;
}

function bucketOf(gram: string, dim: number): number {
  return Number(fnv1a64(Buffer.from(gram, "utf8")) % BigInt(dim));
}

/**
 * Deterministic trigram embedding: lowercase the sentence, bucket-count
 * its character trigrams (code points, hashed modulo dim) and
 * L2-normalize. Sentences shorter than three code points fall back to a
 * one-hot bucket from hashing the whole sentence.
 */
export function hashTrigramVector(sentence: string, dim: number): Float64Array {
  const vec = new Float64Array(dim);
  const chars = Array.from(sentence.toLowerCase());
  if (chars.length < 3) {
    vec[bucketOf(chars.join(""), dim)] = 1.0;
    return vec;
  }
  for (let k = 0; k + 2 < chars.length; k++) {
    vec[bucketOf(chars[k] + chars[k + 1] + chars[k + 2], dim)] += 1.0;
  }
  let sumSquares = 0.0;
  for (const v of vec) {
    sumSquares += v * v;
  }
  const norm = Math.sqrt(sumSquares);
  for (let k = 0; k < dim; k++) {
    vec[k] /= norm;
  }
  return vec;
}
