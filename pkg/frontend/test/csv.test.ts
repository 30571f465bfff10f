import { describe, expect, it } from "vitest";

import { column, parseCsv, SchemaError } from "../src/csv";

describe("parseCsv", () => {
  it("parses comments, header and numeric rows", () => {
    const table = parseCsv("# relmass figure1 --out x.csv\nt,c4,c5\n0,0,0\n0.5,1,2\n");
    expect(table.comments).toEqual(["relmass figure1 --out x.csv"]);
    expect(table.columns).toEqual(["t", "c4", "c5"]);
    expect(table.rows).toEqual([
      [0, 0, 0],
      [0.5, 1, 2],
    ]);
  });

  it("round-trips 17-digit floats", () => {
    const table = parseCsv("t,value\n0.050000000000000003,0.049994792236271214\n1,2\n");
    expect(table.rows[0][1]).toBeCloseTo(0.049994792236271214, 18);
  });

  it("rejects a header without value columns", () => {
    expect(() => parseCsv("t\n0\n1\n")).toThrow(SchemaError);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("t,value\n0,1\n1\n")).toThrow(SchemaError);
  });

  it("rejects non-numeric cells", () => {
    expect(() => parseCsv("t,value\n0,oops\n1,2\n")).toThrow(SchemaError);
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("# only a comment\n")).toThrow(SchemaError);
  });

  it("rejects single-row tables", () => {
    expect(() => parseCsv("t,value\n0,1\n")).toThrow(SchemaError);
  });
});

describe("column", () => {
  it("extracts by name and reports missing columns", () => {
    const table = parseCsv("t,value\n0,1\n1,2\n");
    expect(column(table, "value")).toEqual([1, 2]);
    expect(() => column(table, "c4")).toThrow(SchemaError);
  });
});
