"""Command-line interface.

    eulerpaths count --c 1,1 --i 3,5
    eulerpaths bvalue --c 1,2,1 --prefix 1,1 --method series --trunc 200
    eulerpaths limit --c 1,1 --prefix 1 --steps 30 --tol 1e-6
    eulerpaths table --kind eulerian --rows 12
    eulerpaths poly --kind gamma --k 3 --n 4
    eulerpaths verify --identity all --max-n 10

Every command takes ``--format pretty|json|csv`` and ``--out FILE``.
Exit codes: 0 success, 1 a verification or tolerance check failed,
2 usage error, 3 malformed input, 4 dimension mismatch, 5 budget
exceeded, 6 degenerate normalizer, 7 index out of range.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import asymptotics, gamma_delta, identity_suite, path_engine, special_numbers
from .errors import EulerPathsError, MalformedInput

__all__ = ["cli", "main", "parse_vector"]

FORMATS = ("pretty", "json", "csv")


def parse_vector(text: str, name: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise MalformedInput(f"--{name} must be a comma-separated list of integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise MalformedInput(f"--{name} entries must be nonnegative, got {text!r}")
    return values


def parse_rational(text: str, name: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"--{name} must be a rational or decimal number, got {text!r}") from None
    if value <= 0:
        raise MalformedInput(f"--{name} must be positive, got {text!r}")
    return value


def output_options(fn):
    fn = click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None,
                      help="Write output to FILE instead of stdout.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty", show_default=True)(fn)
    return fn


def _csv_text(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    for row in rows[1:]:
        fields.extend(k for k in row if k not in fields)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()})
    return buf.getvalue()


def emit(fmt: str, out: str | None, payload, rows: list[dict], pretty: str) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        text = _csv_text(rows)
    else:
        text = pretty if pretty.endswith("\n") else pretty + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except EulerPathsError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=_Group)
def cli():
    """Exact path counts, growth constants and Stirling identities for E_c."""


@cli.command()
@click.option("--c", "c_text", required=True, help="Edge offsets c_1,..,c_{n+1}.")
@click.option("--i", "i_text", required=True, help="Target vertex i_1,..,i_{n+1}.")
@click.option("--bruteforce", is_flag=True, help="Enumerate step orderings instead of the recurrence.")
@click.option("--budget", type=click.IntRange(min=1), default=path_engine.DEFAULT_BRUTEFORCE_BUDGET,
              show_default=True, help="Maximum number of steps for --bruteforce.")
@output_options
def count(c_text, i_text, bruteforce, budget, fmt, out):
    """Number of paths from the origin to i in E_c."""
    c = parse_vector(c_text, "c")
    i = parse_vector(i_text, "i")
    if bruteforce:
        value = path_engine.path_count_bruteforce(c, i, budget=budget)
    else:
        value = path_engine.path_count(c, i)
    payload = {"c": list(c), "i": list(i), "count": str(value), "method": "bruteforce" if bruteforce else "recurrence"}
    emit(fmt, out, payload, [payload], str(value))


@cli.command()
@click.option("--c", "c_text", required=True)
@click.option("--prefix", "prefix_text", required=True, help="i_1,..,i_n (the last coordinate goes to infinity).")
@click.option("--method", type=click.Choice(["closed", "series", "operator", "ratio"]), default="closed",
              show_default=True)
@click.option("--trunc", type=click.IntRange(min=0), default=200, show_default=True,
              help="Series truncation N, or step count for --method ratio.")
@output_options
def bvalue(c_text, prefix_text, method, trunc, fmt, out):
    """Growth constant B_c(prefix)."""
    c = parse_vector(c_text, "c")
    prefix = parse_vector(prefix_text, "prefix")
    if method == "ratio" and trunc < 1:
        raise MalformedInput("--trunc must be at least 1 for --method ratio")
    bv = asymptotics.b_value(c, prefix, method, trunc)
    payload = bv.as_dict()
    pretty = f"{bv.value}    [{bv.provenance.value}" + (f", N={trunc}" if method == "series" else "") + (
        f", h={trunc}" if method == "ratio" else "") + "]"
    if bv.value.denominator != 1:
        pretty += f"\n~ {float(bv.value):.12g}"
    emit(fmt, out, payload, [payload], pretty)


@cli.command()
@click.option("--c", "c_text", required=True)
@click.option("--prefix", "prefix_text", required=True)
@click.option("--steps", type=click.IntRange(min=1), default=30, show_default=True)
@click.option("--tol", "tol_text", default="1e-6", show_default=True)
@output_options
def limit(c_text, prefix_text, steps, tol_text, fmt, out):
    """Convergence of A_c(prefix, h)/(c_{n+1}+m)^h to B_c(prefix)."""
    c = parse_vector(c_text, "c")
    prefix = parse_vector(prefix_text, "prefix")
    tol = parse_rational(tol_text, "tol")
    rep = asymptotics.limit_verify(c, prefix, steps, tol)
    rows = rep.rows()
    lines = [f"target B = {rep.target}", f"{'h':>4}  {'error (approx)':>14}  exact error"]
    for row in rows:
        lines.append(f"{row['h']:>4}  {row['error_approx']:>14}  {row['error']}")
    lines.append(f"{'PASS' if rep.passed else 'FAIL'}: error at h={steps} "
                 f"{'<' if rep.passed else '>='} tol {tol}")
    emit(fmt, out, rep.as_dict(), rows, "\n".join(lines))
    if not rep.passed:
        sys.exit(1)


@cli.command()
@click.option("--kind", type=click.Choice(["eulerian", "stirling1", "stirling2"]), required=True)
@click.option("--rows", type=click.IntRange(min=1), default=12, show_default=True)
@output_options
def table(kind, rows, fmt, out):
    """Print a triangle of Eulerian or Stirling numbers."""
    data = []
    if kind == "eulerian":
        # row k lists A(i, k-1-i): permutations of k elements by descents
        for k in range(1, rows + 1):
            data.append({"row": k, "values": [special_numbers.eulerian(i, k - 1 - i) for i in range(k)]})
    else:
        fn = special_numbers.stirling1 if kind == "stirling1" else special_numbers.stirling2
        for n in range(1, rows + 1):
            data.append({"row": n, "values": [fn(n, k) for k in range(1, n + 1)]})
    payload = {"kind": kind, "rows": [{"row": d["row"], "values": [str(v) for v in d["values"]]} for d in data]}
    csv_rows = [{"kind": kind, "row": d["row"], "col": j, "value": str(v)}
                for d in data for j, v in enumerate(d["values"], start=0 if kind == "eulerian" else 1)]
    width = max(len(str(v)) for d in data for v in d["values"])
    pretty = "\n".join(f"{d['row']:>3}: " + " ".join(f"{v:>{width}}" for v in d["values"]) for d in data)
    emit(fmt, out, payload, csv_rows, pretty)


@cli.command()
@click.option("--kind", type=click.Choice(["gamma", "delta"]), required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@output_options
def poly(kind, k, n, fmt, out):
    """Coefficients of Gamma_k(q, n) or Delta_{n,k}(q), constant term first."""
    p = gamma_delta.gamma_poly(k, n) if kind == "gamma" else gamma_delta.delta_poly(n, k)
    coeffs = p.to_strings()
    payload = {"kind": kind, "k": k, "n": n, "coefficients": coeffs, "text": str(p)}
    rows = [{"power": e, "coefficient": v} for e, v in enumerate(coeffs)]
    emit(fmt, out, payload, rows, f"[{', '.join(coeffs)}]\n{p}")


@cli.command()
@click.option("--identity", "names",
              type=click.Choice(list(identity_suite.IDENTITIES) + ["all"]), multiple=True, default=("all",),
              show_default=True)
@click.option("--max-n", type=click.IntRange(min=1), default=None,
              help="Size ceiling; defaults to each identity's own ceiling.")
@output_options
def verify(names, max_n, fmt, out):
    """Verify identities over a range; exit 0 iff all pass."""
    selected = list(identity_suite.IDENTITIES) if "all" in names else list(dict.fromkeys(names))
    reports = identity_suite.run_suite(selected, max_n)
    dicts = [r.to_dict() for r in reports]
    payload = dicts[0] if len(dicts) == 1 else dicts
    rows = [{k: v for k, v in d.items()} for d in dicts]
    lines = []
    for r in reports:
        lines.append(f"{r.status.upper():4}  {r.identity:<14} n in {r.range.get('n')}  ({r.elapsed_ms} ms)")
        if r.counterexample:
            lines.append(f"      counterexample: {json.dumps(r.counterexample)}")
        for note in r.notes:
            lines.append(f"      note: {note}")
    emit(fmt, out, payload, rows, "\n".join(lines))
    if not all(r.passed for r in reports):
        sys.exit(1)


def main(argv=None):
    cli.main(args=argv, prog_name="eulerpaths")


if __name__ == "__main__":
    main()
