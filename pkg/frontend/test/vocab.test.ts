import { describe, expect, it } from "vitest";

import {
  EOS,
  PAD,
  SOS,
  buildVocab,
  decodeIds,
  encodeSource,
  encodeTargetIn,
  encodeTargetOut,
} from "../src/vocab.js";

describe("vocab", () => {
  it("maps digits after the specials", () => {
    const v = buildVocab(["1", "2", "3"]);
    expect(v.size).toBe(6);
    expect(v.index.get("1")).toBe(3);
    expect(v.index.get("3")).toBe(5);
  });

  it("deduplicates and sorts the alphabet", () => {
    const v = buildVocab(["3", "1", "3", "2"]);
    expect(v.chars.slice(3)).toEqual(["1", "2", "3"]);
  });

  it("rejects non-digits", () => {
    expect(() => buildVocab(["0"])).toThrow(/digits 1\.\.9/);
    expect(() => buildVocab(["x"])).toThrow(/digits 1\.\.9/);
  });

  it("pads sources to the window", () => {
    const v = buildVocab(["1", "2"]);
    expect(encodeSource("121", v, 5)).toEqual([3, 4, 3, PAD, PAD]);
    expect(() => encodeSource("121212", v, 5)).toThrow(/longer/);
  });

  it("frames teacher-forcing rows with SOS and EOS", () => {
    const v = buildVocab(["1", "2"]);
    expect(encodeTargetIn("21", v, 4)).toEqual([SOS, 4, 3, PAD]);
    expect(encodeTargetOut("21", v, 4)).toEqual([4, 3, EOS, PAD]);
  });

  it("round trips through decode", () => {
    const v = buildVocab(["1", "2", "3"]);
    const ids = encodeTargetOut("113221", v, 8);
    expect(decodeIds(ids, v)).toBe("113221");
  });

  it("decode stops at EOS and skips specials", () => {
    const v = buildVocab(["1", "2"]);
    expect(decodeIds([SOS, 3, PAD, 4, EOS, 4, 4], v)).toBe("12");
  });
});
