/**
 * TypeScript bindings for the trajlab command-line tool.
 *
 * Every operation shells out to the CLI and parses its JSON output, so the
 * values returned here are identical to what the CLI prints for the same
 * input: no labeling or analytics logic is reimplemented on this side.
 */
import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface LabelRecord {
  episode_id: string;
  subtask: string;
  mode_id: string;
  success_once: boolean;
  success_at_end: boolean;
  events: { kind: string; t: number }[];
  target_id: string;
  task: string;
  split: string;
  policy_tag: string;
  source: string;
  [key: string]: unknown;
}

export interface StatsRow {
  key: Record<string, string>;
  count: number;
  sor: number;
  saer: number;
  fr: number;
  modes: Record<string, number>;
}

export interface StatsFrame {
  group_by: string[];
  rows: StatsRow[];
}

export interface AllowRule {
  subtask: string;
  modes: string[];
  weight: number;
}

export interface FilterSpecInput {
  allow: AllowRule[];
  quota_per_target: number;
  quota_key?: string;
  [key: string]: unknown;
}

export interface ManifestEntry {
  episode_id: string;
  subtask: string;
  mode_id: string;
  target_id: string;
  source: string;
  [key: string]: unknown;
}

export interface DatasetManifest {
  entries: ManifestEntry[];
  counts: Record<string, number>;
  shortfalls: unknown[];
  [key: string]: unknown;
}

export type Thresholds = Record<string, number>;

/** Base class for errors raised by the underlying tool. */
export class TrajlabError extends Error {
  constructor(
    message: string,
    public readonly exitCode: number,
    public readonly stderr: string,
  ) {
    super(message);
    this.name = new.target.name;
  }
}

/** Exit code 1: bad arguments or unreadable input. */
export class UsageError extends TrajlabError {}
/** Exit code 2: some inputs could not be processed. */
export class PartialFailureError extends TrajlabError {}
/** Exit code 3: an internal property check failed. */
export class PropertyViolationError extends TrajlabError {}

export interface RunOptions {
  /** Command used to invoke the tool; default "trajlab" (or $TRAJLAB_BIN). */
  bin?: string;
  /** Path to a thresholds JSON file, passed as --thresholds. */
  thresholds?: string;
  /** Worker count for directory labeling. */
  workers?: number;
}

function run(args: string[], opts: RunOptions = {}): string {
  const bin = opts.bin ?? process.env.TRAJLAB_BIN ?? "trajlab";
  if (opts.thresholds) args = [...args, "--thresholds", opts.thresholds];
  const res = spawnSync(bin, args, {
    encoding: "utf-8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (res.error) throw res.error;
  const code = res.status ?? -1;
  if (code !== 0) {
    const msg = (res.stderr || "").trim().split("\n").pop() ?? "";
    const text = `trajlab ${args[0]} exited ${code}: ${msg}`;
    if (code === 2) throw new PartialFailureError(text, code, res.stderr);
    if (code === 3) throw new PropertyViolationError(text, code, res.stderr);
    throw new UsageError(text, code, res.stderr);
  }
  return res.stdout;
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "trajlab-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function writeLabels(dir: string, labels: LabelRecord[]): string {
  const path = join(dir, "labels.jsonl");
  writeFileSync(
    path,
    labels.map((l) => JSON.stringify(l)).join("\n") + "\n",
  );
  return path;
}

/** Default thresholds as reported by the tool itself. */
export function thresholds_default(opts: RunOptions = {}): Thresholds {
  return JSON.parse(run(["thresholds"], opts)) as Thresholds;
}

/** Label a single trajectory file (binary or text). */
export function label_file(path: string, opts: RunOptions = {}): LabelRecord {
  const out = run(["label", path], opts).trim();
  return JSON.parse(out) as LabelRecord;
}

/** Label every trajectory file in a directory, sorted by episode id. */
export function label_dir(dir: string, opts: RunOptions = {}): LabelRecord[] {
  const args = ["label", dir];
  if (opts.workers) args.push("--workers", String(opts.workers));
  return run(args, opts)
    .split("\n")
    .filter((line) => line.length > 0)
    .map((line) => JSON.parse(line) as LabelRecord);
}

/** Apply a mode allowlist with per-target quotas to a set of labels. */
export function filter(
  labels: LabelRecord[],
  spec: FilterSpecInput,
  opts: RunOptions = {},
): DatasetManifest {
  return withTempDir((dir) => {
    const labelsPath = writeLabels(dir, labels);
    const specPath = join(dir, "spec.json");
    writeFileSync(specPath, JSON.stringify(spec));
    const out = run(["filter", labelsPath, "--spec", specPath], opts);
    return JSON.parse(out) as DatasetManifest;
  });
}

/** Success-rate / mode-distribution table over a set of labels. */
export function stats_frame(
  labels: LabelRecord[],
  group_by: string[] = ["subtask"],
  opts: RunOptions = {},
): StatsFrame {
  return withTempDir((dir) => {
    const labelsPath = writeLabels(dir, labels);
    const out = run(
      [
        "stats",
        labelsPath,
        "--group-by",
        group_by.join(","),
        "--format",
        "json",
      ],
      opts,
    );
    return JSON.parse(out) as StatsFrame;
  });
}
