#!/usr/bin/env python3
"""Minimal runner speaking the one-request/one-response JSON protocol.

Used by the validator tests; it applies the program's derive(t) to the table.
"""
import json
import math
import re
import signal
import sys


class Timeout(BaseException):
    pass


def on_alarm(signum, frame):
    raise Timeout()


def to_value(cell):
    if cell == "":
        return None
    if re.fullmatch(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?", cell):
        v = float(cell)
        return int(v) if v.is_integer() and abs(v) < 2**53 else v
    return cell


def to_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return "#VALUE!"
        return str(int(value)) if value.is_integer() and abs(value) < 2**53 else repr(value)
    return str(value)


def run(request):
    try:
        import resource
        cap = int(request.get("memory_mb", 512)) * 1024 * 1024
        resource.setrlimit(resource.RLIMIT_AS, (cap, cap))
    except (ImportError, ValueError, OSError):
        pass
    table = request["table"]
    headers = table["headers"]
    rows = table["rows"]
    t = {h: [to_value(r[i]) for r in rows] for i, h in enumerate(headers)}
    scope = {"__name__": "program"}
    signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, max(int(request.get("timeout_ms", 10000)), 1) / 1000.0)
    try:
        return execute(request, t, scope, len(rows))
    except Timeout:
        return {"status": "timeout", "error": "timeout"}
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)


def execute(request, t, scope, row_count):
    try:
        exec(compile(request["program"], "<program>", "exec"), scope)
    except MemoryError:
        return {"status": "error", "error": "memory limit"}
    except Exception as e:  # noqa: BLE001
        return {"status": "error", "error": f"{type(e).__name__}: {e}".splitlines()[0]}
    derive = scope.get("derive")
    if not callable(derive):
        return {"status": "error", "error": "entrypoint not found"}
    try:
        out = list(derive(t))
    except MemoryError:
        return {"status": "error", "error": "memory limit"}
    except Exception as e:  # noqa: BLE001
        return {"status": "error", "error": f"{type(e).__name__}: {e}".splitlines()[0]}
    if len(out) != row_count:
        return {"status": "error", "error": f"derive returned {len(out)} values for {row_count} rows"}
    return {"status": "ok", "column": [to_cell(v) for v in out]}


def main():
    if len(sys.argv) > 1 and sys.argv[1] != "run":
        print(f"usage: {sys.argv[0]} run", file=sys.stderr)
        return 2
    try:
        request = json.load(sys.stdin)
    except ValueError as e:
        print(f"bad request: {e}", file=sys.stderr)
        return 2
    json.dump(run(request), sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
