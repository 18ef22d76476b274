#!/usr/bin/env python3
"""Scripted stand-in for an SMT solver used by the driver tests.

Answers every check command with a fixed reply chosen by the mode comment
in the script (weak or strong). Behaviours: --crash, --hang, --garbage,
--no-assuming (reject check-sat-assuming), --delay seconds, --answers
(comma list consumed per check, last one repeats).
"""
import argparse
import os
import signal
import sys
import time


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--weak", default="sat")
    ap.add_argument("--strong", default="unsat")
    ap.add_argument("--answers")
    ap.add_argument("--delay", type=float, default=0.0)
    ap.add_argument("--crash", action="store_true")
    ap.add_argument("--hang", action="store_true")
    ap.add_argument("--garbage", action="store_true")
    ap.add_argument("--no-assuming", action="store_true")
    ap.add_argument("--log")
    args = ap.parse_args()

    mode = None
    queue = args.answers.split(",") if args.answers else None
    log = open(args.log, "a") if args.log else None
    for line in sys.stdin:
        if log:
            log.write(line)
            log.flush()
        if line.startswith("; mode="):
            mode = line.split()[1].split("=")[1]
        stripped = line.strip()
        if not stripped.startswith(("(check-sat", "(check-sat-assuming")):
            continue
        if args.crash:
            os.kill(os.getpid(), signal.SIGSEGV)
        if args.hang:
            time.sleep(3600)
        if args.garbage:
            print("hello there", flush=True)
            continue
        if args.no_assuming and stripped.startswith("(check-sat-assuming"):
            print('(error "unsupported command")', flush=True)
            continue
        time.sleep(args.delay)
        if queue:
            reply = queue.pop(0) if len(queue) > 1 else queue[0]
        else:
            reply = args.weak if mode == "weak" else args.strong
        print(reply, flush=True)


if __name__ == "__main__":
    main()
