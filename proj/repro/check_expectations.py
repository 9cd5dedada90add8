"""Compares a repro run directory with the published figures."""

import json
import pathlib
import sys


def main() -> int:
    expected = json.loads(pathlib.Path(sys.argv[1]).read_text())
    work = pathlib.Path(sys.argv[2])
    tol = expected["tolerance"]
    rows = []

    def check(name, got, want, kind):
        if kind == "exact":
            ok = got == want
        elif kind == "relative":
            ok = abs(got - want) <= tol["llm_counts_relative"] * want
        else:
            ok = abs(got - want) <= tol["averages_absolute"]
        rows.append((name, got, want, ok))

    manifest = json.loads((work / "kept.jsonl.manifest.json").read_text())
    dropped = manifest["dropped"]
    kept = manifest["kept"]
    total = kept + sum(dropped.values())
    check("filter: after deprecated removal", total - dropped.get("deprecated-function", 0),
          expected["filter"]["after_deprecated"], "exact")
    check("filter: kept", kept, expected["filter"]["kept"], "exact")

    stats = {name: json.loads((work / f"stats_{name}.json").read_text()) for name in ("raw", "VO", "VP", "VC")}
    for name, want in expected["subsets"].items():
        got = stats[name]
        deterministic = name == "raw"
        check(f"{name}: size", got["size"], want["size"], "exact" if deterministic else "relative")
        check(f"{name}: # functions", got["unique_functions"], want["unique_functions"],
              "exact" if deterministic else "relative")
        for key in ("avg_function_calls", "avg_depth", "avg_operator_count"):
            check(f"{name}: {key}", round(got[key], 2), want[key], "absolute")

    partition = json.loads((work / "partition.json").read_text())
    check("partition: none pass", partition["none_pass"], expected["partition"]["none_pass"], "relative")
    check("partition: all pass", partition["all_pass"], expected["partition"]["all_pass"], "relative")

    removed = set(stats["raw"]["functions"]) - set(stats["VO"]["functions"])
    check("functions removed by VO", len(removed), expected["removed_by_VO"], "relative")

    width = max(len(r[0]) for r in rows)
    for name, got, want, ok in rows:
        print(f"{'ok  ' if ok else 'DIFF'}  {name:<{width}}  got {got}  published {want}")
    return 0 if all(r[3] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
