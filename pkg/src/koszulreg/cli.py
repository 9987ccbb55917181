"""koszulreg command line: betti, reg, verify, reproduce.

Exit codes: 0 success / all pass, 1 mismatch or must-pass failure, 2 usage error.
"""

import argparse
import json
import re
import signal
import sys
import time

from . import instances
from .field import Field
from .ideal import Ideal, ideal_as_module, quotient_module
from .koszul import KoszulComplex
from .modules import Subquotient, tensor_presentation
from .resolution import InconclusiveError, betti_oracle, betti_table, format_reg
from .ring import ParseError, PolyRing, parse_ring_description
from . import verify as V


class UsageError(Exception):
    pass


# --- module expressions ------------------------------------------------------
#
#   module := Z(t, I[; M]) | B(t, I[; M]) | H(t, I[; M]) | tensor(module, module)
#           | ideal(p, ...) | S | S/ideal | ideal-ref
#   ideal  := NAME | (p, ...) | ideal(p, ...)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<p>[(),;/]))")


class ExprError(UsageError):
    def __init__(self, msg, text, pos):
        super().__init__(f"expression error at column {pos + 1}: {msg}\n  {text}\n  {' ' * pos}^")
        self.pos = pos


class _ExprParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == m.start():
            return None, None
        kind = m.lastgroup
        return kind, m.group(kind)

    def take(self, expect=None):
        self.skip()
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self.fail("unexpected character" if self.pos < len(self.text) else "unexpected end")
        val = m.group(m.lastgroup)
        if expect is not None and val != expect:
            self.fail(f"expected {expect!r}")
        self.pos = m.end()
        return m.lastgroup, val

    def fail(self, msg):
        self.skip()
        raise ExprError(msg, self.text, self.pos)

    def raw_group(self):
        """Text between a '(' (already at pos) and its matching ')'."""
        self.take("(")
        start = depth = self.pos
        depth = 1
        i = self.pos
        while i < len(self.text):
            c = self.text[i]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth == 0:
                    self.pos = i + 1
                    return ("polys", self.text[start:i], start)
            i += 1
        self.fail("unbalanced parenthesis")

    def parse(self):
        node = self.module()
        self.skip()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return node

    def ideal(self):
        kind, val = self.peek()
        if val == "(":
            return self.raw_group()
        if kind == "name":
            pos = self.pos
            self.take()
            if val == "ideal" and self.peek()[1] == "(":
                return self.raw_group()
            return ("name", val, pos)
        self.fail("expected an ideal")

    def module(self):
        kind, val = self.peek()
        pos = self.pos
        if kind == "name" and val in ("Z", "B", "H"):
            self.take()
            self.take("(")
            k, t = self.take()
            if k != "int":
                self.pos = pos
                self.fail("expected the strand index")
            self.take(",")
            I = self.ideal()
            M = ("S",)
            if self.peek()[1] == ";":
                self.take()
                M = self.module()
            self.take(")")
            return (val, int(t), I, M)
        if kind == "name" and val == "tensor":
            self.take()
            self.take("(")
            a = self.module()
            self.take(",")
            b = self.module()
            self.take(")")
            return ("tensor", a, b)
        if kind == "name" and val == "S":
            self.take()
            if self.peek()[1] == "/":
                self.take()
                return ("quot", self.ideal())
            return ("S",)
        if kind == "name" and val == "ideal":
            return ("ideal", self.ideal())
        if kind == "name" or val == "(":
            return ("ideal", self.ideal())
        self.fail("expected a module expression")


def parse_expression(text):
    return _ExprParser(text).parse()


def _ideal_leaves(node, out):
    if not isinstance(node, tuple):
        return out
    if node[0] in ("name", "polys"):
        out.append(node)
        return out
    for x in node[1:]:
        _ideal_leaves(x, out)
    return out


def _natural(s):
    return [int(x) if x.isdigit() else x for x in re.split(r"(\d+)", s)]


class Environment:
    """Ring plus named ideals (from an input file or the instance library)."""

    def __init__(self, ring=None, defs=None):
        self.ring = ring
        self.defs = defs or {}
        self.cache = {}

    def ideal(self, leaf):
        if leaf[0] == "polys":
            try:
                return Ideal(self.ring, self.ring.parse_list(leaf[1]) if leaf[1].strip() else [])
            except ParseError as e:
                raise UsageError(f"cannot parse generators {leaf[1]!r}: {e}") from None
        name = leaf[1]
        if name in self.cache:
            return self.cache[name]
        if name in self.defs:
            try:
                I = Ideal(self.ring, self.ring.parse_list(self.defs[name]))
            except ParseError as e:
                raise UsageError(f"input file, definition of {name}: {e}") from None
        elif name in instances.LIBRARY:
            I = instances.get(name, self.ring.field)
            if I.ring.variables != self.ring.variables:
                raise UsageError(f"library ideal {name} lives in variables {' '.join(I.ring.variables)}")
            I = Ideal(self.ring, [self.ring.parse(str(g)) for g in I.gens])
        else:
            raise UsageError(f"unknown ideal {name!r}")
        self.cache[name] = I
        return I


def build_environment(tree, input_text=None, field=None, order=None):
    leaves = _ideal_leaves(tree, [])
    if input_text is not None:
        try:
            ring, defs = parse_ring_description(input_text)
        except (ValueError, ParseError) as e:
            raise UsageError(f"input file: {e}") from None
        if field is not None:
            ring = ring.with_field(field)
        return Environment(ring, defs)
    fld = field
    lib = {leaf[1] for leaf in leaves if leaf[0] == "name"}
    unknown = lib - set(instances.LIBRARY)
    if unknown:
        raise UsageError(f"unknown ideal(s) {', '.join(sorted(unknown))} and no --input file")
    if lib:
        rings = {instances.get(n).ring.variables for n in lib}
        if len(rings) > 1:
            raise UsageError("library ideals from different rings")
        variables = rings.pop()
        return Environment(PolyRing(variables, fld or Field(32003)))
    names = set()
    for leaf in leaves:
        names.update(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", leaf[1]))
    if not names:
        raise UsageError("cannot infer the variables; pass --input with a 'vars:' line")
    return Environment(PolyRing(sorted(names, key=_natural), fld or Field(32003)))


def evaluate(node, env):
    kind = node[0]
    ring = env.ring
    if kind == "S":
        return Subquotient.ring_quotient(ring, [])
    if kind == "quot":
        return quotient_module(env.ideal(node[1]))
    if kind == "ideal":
        return ideal_as_module(env.ideal(node[1]))
    if kind == "tensor":
        return tensor_presentation(evaluate(node[1], env), evaluate(node[2], env))
    if kind in ("Z", "B", "H"):
        _, t, I, M = node
        Iv = env.ideal(I)
        K = KoszulComplex(Iv.mingens(), evaluate(M, env)) if Iv.mingens() else None
        if K is None:
            raise UsageError("the Koszul complex needs a nonzero ideal")
        if kind == "Z":
            return K.cycles(t)
        if t < 0 or t > K.m:
            return Subquotient(K.ambient(0), [])
        return K.boundaries(t) if kind == "B" else K.homology(t)
    raise UsageError(f"unsupported expression {kind}")


# --- commands ------------------------------------------------------------------

def _progress(args):
    if args.quiet:
        return None
    t0 = time.perf_counter()
    return lambda msg: print(f"[{time.perf_counter() - t0:8.2f}s] {msg}", file=sys.stderr, flush=True)


def _module_from_args(args):
    if not args.expr:
        raise UsageError("--expr is required")
    tree = parse_expression(args.expr)
    text = None
    if args.input:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.input}: {e}") from None
    env = build_environment(tree, text, args.field)
    return evaluate(tree, env)


def cmd_betti(args):
    M = _module_from_args(args)
    bt = betti_table(M, progress=_progress(args))
    status = 0
    oracle = None
    if args.degree_bound is not None:
        try:
            oracle = betti_oracle(M, degree_bound=args.degree_bound)
            if oracle != bt.truncated(args.degree_bound):
                status = 1
                print("oracle mismatch", file=sys.stderr)
        except InconclusiveError as e:
            print(f"oracle inconclusive: {e}", file=sys.stderr)
    if args.format == "json":
        out = bt.to_json()
        if oracle is not None:
            out["oracle_agrees"] = status == 0
        print(json.dumps(out))
    else:
        sys.stdout.write(bt.render())
        print(f"reg: {format_reg(bt.reg)}")
    return status


def cmd_reg(args):
    M = _module_from_args(args)
    r = betti_table(M, progress=_progress(args)).reg
    if args.format == "json":
        print(json.dumps({"reg": r, "reg_is_minus_infinity": r is None}))
    else:
        print(format_reg(r))
    return 0


def cmd_verify(args):
    out = open(args.output, "w") if args.output else sys.stdout

    def emit(rep):
        out.write(json.dumps(rep.to_json()) + "\n")
        out.flush()
        if not args.quiet:
            print(rep.line(), file=sys.stderr)

    try:
        if args.replay:
            try:
                with open(args.replay) as fh:
                    w = json.load(fh)
            except (OSError, ValueError) as e:
                raise UsageError(f"cannot read witness: {e}") from None
            rep = V.replay(w)
            emit(rep)
            return 0 if rep.ok else 1
        checks = args.check or ["thm2"]
        cfg = {"checks": checks, "trials": args.trials, "seed": args.seed,
               "field": args.field, "witness_dir": args.witness_dir, "on_report": emit}
        if args.max_n:
            cfg["n"] = (2, args.max_n)
        try:
            reports = V.run_harness(cfg)
        except V.UnexpectedFailure as e:
            print(f"unexpected failure: {e}", file=sys.stderr)
            return 1
        except ValueError as e:
            raise UsageError(str(e)) from None
        summary = V.summarize(reports)
        for c, s in summary.items():
            print(f"{c}: {s['ok']}/{s['trials']} as expected", file=sys.stderr)
        return 0 if all(r.ok for r in reports) else 1
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_reproduce(args):
    status = 0
    for eid in args.ids:
        if eid not in instances.EXAMPLE_IDS:
            raise UsageError(f"unknown example id {eid!r}; valid ids: {', '.join(instances.EXAMPLE_IDS)}")
    for eid in args.ids:
        ok, lines, rep = V.reproduce(eid, args.field, _progress(args))
        if args.format == "json":
            print(json.dumps({"id": eid, "pass": ok, "report": rep.to_json()}))
        else:
            for ln in lines:
                print(ln)
            print(f"{eid}: {'PASS' if ok else 'FAIL'} ({rep.seconds:.2f}s)")
        status = status or (0 if ok else 1)
    return status


def _field_arg(text):
    t = text.strip()
    m = re.fullmatch(r"GF:(\d+)", t)
    if m:
        t = f"GF({m.group(1)})"
    try:
        return Field.parse(t)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser():
    p = argparse.ArgumentParser(prog="koszulreg", description="Koszul cycles, Betti tables and regularity bounds")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--field", type=_field_arg, default=None, help="QQ or GF:p")
        sp.add_argument("--order", choices=["degrevlex"], default="degrevlex")
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
        sp.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    for name in ("betti", "reg"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--expr", required=True, help='e.g. "Z(2, J1)" or "H(1, I; S/J)"')
        sp.add_argument("--input", help="ring description file (vars/field/order and NAME = gens)")
        sp.add_argument("--degree-bound", type=int, default=None,
                        help="cross-check against the linear-algebra oracle up to this degree")

    sp = sub.add_parser("verify")
    common(sp)
    sp.add_argument("--check", action="append", choices=sorted(V.CHECKS))
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--output", help="JSONL report file (default stdout)")
    sp.add_argument("--witness-dir", default=".")
    sp.add_argument("--replay", help="witness JSON to re-run")

    sp = sub.add_parser("reproduce")
    common(sp)
    sp.add_argument("ids", nargs="+", metavar="ID", help=", ".join(instances.EXAMPLE_IDS))
    return p


class _Timeout(Exception):
    pass


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handlers = {"betti": cmd_betti, "reg": cmd_reg, "verify": cmd_verify, "reproduce": cmd_reproduce}
    if args.time_limit:
        def _alarm(signum, frame):
            raise _Timeout()
        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, args.time_limit)
    try:
        return handlers[args.command](args)
    except UsageError as e:
        print(f"koszulreg: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except _Timeout:
        print(f"koszulreg: time limit of {args.time_limit}s exceeded", file=sys.stderr)
        return 1
    finally:
        if args.time_limit:
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":
    sys.exit(main())
