"""End-to-end checks of the conifold-lab executable."""

import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

COMMANDS = [
    ["hodge", "--n", "4", "--d", "5"],
    ["hodge", "--n", "8", "--d", "400"],
    ["metric", "--family", "resolved", "--a", "1", "--points", "8"],
    ["metric", "--family", "smoothed", "--t", "1", "--sweep", "deviation", "--points", "6"],
    ["metric", "--family", "cone", "--sweep", "ma", "--points", "3", "--seed", "9"],
    ["slag", "--t", "1", "--resolution", "32"],
    ["slag", "--t", "0,1", "--resolution", "16", "--seed", "3"],
    ["transition"],
    ["transition", "--h11", "1", "--h21", "101", "--N", "2", "--k", "1", "--c", "0"],
    ["transition", "--h11", "2", "--h21", "86", "--N", "16", "--h11-after", "1", "--h21-after", "101"],
    ["dwork", "--random", "20"],
    ["friedman", "--example", "tian-yau"],
    ["friedman", "--json", '[["1/2","1+i"],[0,"2i"]]'],
    ["verify-all", "--fast"],
    ["verify-all", "--fast", "--timings"],
]

CSV_COMMANDS = [
    ["metric", "--family", "resolved", "--a", "1", "--sweep", "profile", "--format", "csv"],
    ["metric", "--family", "smoothed", "--t", "1", "--sweep", "deviation", "--format", "csv"],
    ["metric", "--family", "resolved", "--sweep", "convergence", "--format", "csv", "--points", "40"],
]

EXIT_CODES = [
    (["hodge"], 0),
    (["slag", "--resolution", "16", "--tol", "slag.rel_error=1e-12"], 1),
    (["transition", "--h11", "1", "--h21", "101", "--N", "2", "--k", "1", "--c", "0"], 1),
    ([], 2),
    (["bogus"], 2),
    (["hodge", "--n"], 2),
    (["hodge", "--tol", "nonexistent=1"], 2),
    (["hodge", "--tol", "broken"], 2),
    (["slag", "--resolution", "7"], 2),
    (["slag", "--t", "abc"], 2),
    (["metric", "--sweep", "profile", "--points", "0"], 2),
    (["metric", "--sweep", "profile", "--tau-min", "5", "--tau-max", "5", "--points", "3"], 2),
    (["metric", "--sweep", "heatmap"], 2),
    (["metric", "--format", "csv"], 2),
    (["friedman"], 2),
    (["friedman", "--example", "tian-yau", "--json", "[[1]]"], 2),
    (["verify-all", "--fast", "--full"], 2),
    (["hodge", "--help"], 0),
]


def run(exe, args, env=None):
    return subprocess.run([exe] + args, capture_output=True, env=env, timeout=600)


def check_schema(exe, schema_path):
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for args in COMMANDS + [a for a, _ in EXIT_CODES[1:3]]:
        proc = run(exe, args)
        if proc.returncode not in (0, 1):
            print("command failed:", args, proc.stderr.decode())
            bad += 1
            continue
        report = json.loads(proc.stdout)
        errors = list(validator.iter_errors(report))
        for err in errors:
            print("schema violation for", args, ":", err.message)
        bad += bool(errors)
        if report["command"] != args[0]:
            print("command field mismatch for", args)
            bad += 1
        if report["passed"] != (proc.returncode == 0):
            print("passed flag disagrees with exit status for", args)
            bad += 1
    return bad


def check_determinism(exe):
    bad = 0
    single = dict(os.environ, CONIFOLD_LAB_THREADS="1")
    for args in COMMANDS + CSV_COMMANDS:
        if "--timings" in args:
            continue
        first = run(exe, args).stdout
        second = run(exe, args).stdout
        serial = run(exe, args, env=single).stdout
        if not (first == second == serial):
            print("non-deterministic output:", args)
            bad += 1
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "report.json")
        run(exe, ["--output", path, "slag", "--resolution", "16"])
        with open(path, "rb") as fh:
            if fh.read() != run(exe, ["slag", "--resolution", "16"]).stdout:
                print("--output file differs from stdout")
                bad += 1
    return bad


def check_csv(exe):
    bad = 0
    for args in CSV_COMMANDS:
        proc = run(exe, args)
        text = proc.stdout.decode()
        if proc.returncode != 0 or "\r" in text or not text.endswith("\n"):
            print("bad CSV output:", args)
            bad += 1
            continue
        rows = text.splitlines()
        width = len(rows[0].split(","))
        if len(rows) < 2 or any(len(r.split(",")) != width for r in rows):
            print("ragged CSV:", args)
            bad += 1
    return bad


def check_exit_codes(exe):
    bad = 0
    for args, expected in EXIT_CODES:
        proc = run(exe, args)
        if proc.returncode != expected:
            print(f"exit {proc.returncode}, expected {expected}:", args, proc.stderr.decode())
            bad += 1
        if expected == 1 and b"FAILED:" not in proc.stderr:
            print("failing assertion not named on stderr:", args)
            bad += 1
    return bad


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("mode", choices=["schema", "determinism", "csv", "exit-codes"])
    parser.add_argument("--exe", required=True)
    parser.add_argument("--schema")
    opts = parser.parse_args()
    if opts.mode == "schema":
        bad = check_schema(opts.exe, opts.schema)
    elif opts.mode == "determinism":
        bad = check_determinism(opts.exe)
    elif opts.mode == "csv":
        bad = check_csv(opts.exe)
    else:
        bad = check_exit_codes(opts.exe)
    print(f"{opts.mode}: {bad} problem(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
