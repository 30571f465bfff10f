#!/usr/bin/env node
/**
 * CLI: render a relmass CSV into an SVG line chart.
 *
 * Usage: node dist/render.js input.csv output.svg
 *          [--ref-line Y] [--title T] [--x-label X] [--y-label Y]
 *
 * Exits 0 on success, 1 on missing input, schema mismatch, or bad flags.
 */

import * as fs from "fs";

import { lineChartSvg, ChartOptions } from "./chart";
import { parseCsv, SchemaError } from "./csv";

interface CliArgs {
  input: string;
  output: string;
  options: ChartOptions;
}

export function parseArgs(argv: string[]): CliArgs {
  const positional: string[] = [];
  const options: ChartOptions = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const takeValue = (): string => {
      const value = argv[++i];
      if (value === undefined) {
        throw new SchemaError(`flag ${arg} needs a value`);
      }
      return value;
    };
    switch (arg) {
      case "--ref-line": {
        const y = Number(takeValue());
        if (!Number.isFinite(y)) {
          throw new SchemaError("--ref-line needs a numeric value");
        }
        options.refLines = [...(options.refLines ?? []), y];
        break;
      }
      case "--title":
        options.title = takeValue();
        break;
      case "--x-label":
        options.xLabel = takeValue();
        break;
      case "--y-label":
        options.yLabel = takeValue();
        break;
      default:
        if (arg.startsWith("--")) {
          throw new SchemaError(`unknown flag ${arg}`);
        }
        positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    throw new SchemaError("expected exactly: input.csv output.svg");
  }
  return { input: positional[0], output: positional[1], options };
}

export function renderFile(input: string, output: string, options: ChartOptions): void {
  const text = fs.readFileSync(input, "utf8");
  const table = parseCsv(text);
  fs.writeFileSync(output, lineChartSvg(table, options));
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    renderFile(args.input, args.output, args.options);
    return 0;
  } catch (err) {
    const msg = err instanceof Error ? err.message : String(err);
    process.stderr.write(`render error: ${msg}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
