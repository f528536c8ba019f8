"""
The ``malcev`` command line.

Exit codes: 0 success (or the expression is an identity), 2 usage or input
error, 3 the expression is not an identity, 4 a degree limit was exceeded.
"""
import functools
from typing import Dict, List, Optional

import click

from malcev.pi.cli.cache import CacheFile, default_cache_path
from malcev.pi.cli.output import OutputRecord
from malcev.pi.errors import CacheCorrupt, DegreeTooSmall, LimitExceeded, MalcevError
from malcev.pi.freealg.poly import render
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.base import VIA, BaseNormalForm
from malcev.pi.normalforms.generic import engine_for
from malcev.pi.oracle.identities import run_identity_suite, run_mutation_suite
from malcev.pi.oracle.tideal import AS2, TIdealOracle, Variety
from malcev.pi.parsing.expr import parse_poly
from malcev.pi.registry.varieties import VarietyRegistry
from malcev.pi.symmetric.family import (
    basis_digraph,
    build_p,
    is_symmetric,
    symmetric_subspace_dim,
    to_dot,
    verify_symmetrization_identity,
)
from malcev.pi.utils.config import Settings, load_settings
from malcev.pi.utils.events import EventLogger, configure_logging

EXIT_USAGE = 2
EXIT_NOT_IDENTITY = 3
EXIT_LIMIT = 4

FORMATS = click.Choice(["text", "json"])


class Session(EventLogger):
    """Per-invocation state: settings, the variety registry, one oracle and the engines built on it."""

    def __init__(self, settings: Settings, use_cache: bool = True):
        self.settings = settings
        self.use_cache = use_cache
        self.registry = VarietyRegistry()
        self._oracle: Optional[TIdealOracle] = None
        self._engines: Dict[str, BaseNormalForm] = {}

    def raise_limit(self, max_degree: Optional[int]) -> None:
        if max_degree is not None:
            self.settings = self.settings.override(max_degree=max_degree)
            if self._oracle is not None:
                self._oracle.max_degree = max_degree

    @property
    def oracle(self) -> TIdealOracle:
        if self._oracle is None:
            self._oracle = TIdealOracle(max_degree=self.settings.max_degree)
        return self._oracle

    def variety(self, name: str) -> Variety:
        return self.registry.get_variety(name)

    def cache_file(self, engine: BaseNormalForm, path: Optional[str] = None) -> CacheFile:
        location = path or default_cache_path(self.settings.cache_path, engine)
        return CacheFile(location, engine, self.settings.cache_format_version)

    def engine(self, variety: Variety) -> BaseNormalForm:
        engine = self._engines.get(variety.canonical)
        if engine is None:
            engine = engine_for(variety, self.oracle, self_test=self.settings.self_test)
            self._engines[variety.canonical] = engine
            if self.use_cache:
                try:
                    self.cache_file(engine).load()
                except CacheCorrupt as exc:
                    self._log_event(f"{exc} Cache ignored.", "warning")
        return engine

    def check_degree(self, n: int) -> None:
        if n > self.settings.max_degree:
            raise LimitExceeded(n, self.settings.max_degree)


def handle_errors(command):
    """Map library errors onto exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except LimitExceeded as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(EXIT_LIMIT)
        except MalcevError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)

    return wrapper


def emit(record: OutputRecord, output_format: str, text: str) -> None:
    click.echo(record.to_json() if output_format == "json" else text)


def parse_range(text: str) -> List[int]:
    """``"5"`` or ``"1..6"``."""
    try:
        if ".." in text:
            low, high = (int(x) for x in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise click.BadParameter(f"'{text}' is not n or a..b")
    if low < 1 or high < low:
        raise click.BadParameter(f"'{text}' is not a range of positive degrees")
    return list(range(low, high + 1))


@click.group()
@click.option("--log-level", default=None, help="Logging level for stderr (default from settings).")
@click.option("--cache-dir", default=None, type=click.Path(file_okay=False), help="Structure-constant cache directory.")
@click.option("--no-cache", is_flag=True, help="Do not read structure-constant caches.")
@click.option("--config", default=None, type=click.Path(exists=True, dir_okay=False), help="Settings YAML file.")
@click.pass_context
def cli(ctx, log_level, cache_dir, no_cache, config):
    """Exact computation in the free algebras of Mal'cev's associative varieties."""
    try:
        settings = load_settings(config).override(log_level=log_level, cache_dir=cache_dir)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    configure_logging(settings.log_level)
    ctx.obj = Session(settings, use_cache=not no_cache)


@cli.command()
@click.argument("variety")
@click.option("--multilinear", "multilinear", default=None, help="Degree n or range a..b.")
@click.option("--multidegree", "multidegree", default=None, help="Multidegree such as 1:2,2:1.")
@click.option("--max-degree", type=int, default=None, help="Raise the degree limit.")
@click.option("--format", "output_format", type=FORMATS, default="text")
@click.pass_obj
@handle_errors
def dim(session: Session, variety, multilinear, multidegree, max_degree, output_format):
    """Quotient dimensions of multilinear (or given) components."""
    if (multilinear is None) == (multidegree is None):
        raise click.UsageError("Give exactly one of --multilinear and --multidegree.")
    session.raise_limit(max_degree)
    v = session.variety(variety)
    if multilinear is not None:
        degrees = [Multidegree.multilinear(n) for n in parse_range(multilinear)]
    else:
        degrees = [Multidegree.parse(multidegree)]

    rows = []
    for d in degrees:
        basis = session.oracle.basis(v, d)
        rows.append({
            "n": d.total,
            "multidegree": d.render(),
            "free": basis.free_dimension,
            "rank": basis.rank,
            "dim": basis.free_dimension - basis.rank,
        })
    lines = [f"{'n':>3} {'multidegree':<24} {'free':>6} {'rank':>6} {'dim':>5}"]
    lines += [f"{r['n']:>3} {r['multidegree']:<24} {r['free']:>6} {r['rank']:>6} {r['dim']:>5}" for r in rows]
    record = OutputRecord("dim", v.name, {"multilinear": multilinear, "multidegree": multidegree}, rows)
    emit(record, output_format, "\n".join(lines))


@cli.command()
@click.argument("variety")
@click.argument("expression")
@click.option("--via", type=click.Choice(VIA), default="structural", help="Structural rewriting or pure oracle.")
@click.option("--format", "output_format", type=FORMATS, default="text")
@click.pass_obj
@handle_errors
def nf(session: Session, variety, expression, via, output_format):
    """Normal form of EXPRESSION in the variety's basis."""
    v = session.variety(variety)
    result = session.engine(v).nf(parse_poly(expression), via=via)
    record = OutputRecord("nf", v.name, {"expression": expression, "via": via}, result.records())
    emit(record, output_format, result.render())


@cli.command()
@click.argument("variety")
@click.argument("expression")
@click.option("--certificate", is_flag=True, help="Print the combination of consequences.")
@click.option("--format", "output_format", type=FORMATS, default="text")
@click.pass_obj
@handle_errors
def check(session: Session, variety, expression, certificate, output_format):
    """Decide whether EXPRESSION is an identity of the variety (exit 3 if not)."""
    v = session.variety(variety)
    p = parse_poly(expression)
    verdict = session.oracle.is_identity(p, v, certificate=certificate)
    holds = bool(verdict)

    lines = ["identity" if holds else "not an identity"]
    payload = {"identity": holds}
    if certificate:
        payload["failing"] = [d.render() for d in verdict.failing]
        payload["certificate"] = {}
        for d, combination in sorted(verdict.certificates.items()):
            terms = [{"coeff": c, "consequence": render(source)} for source, c in combination]
            payload["certificate"][d.render()] = terms
            lines.append(f"{d.render()}:")
            lines += [f"  {t['coeff']} * ({t['consequence']})" for t in terms]
        lines += [f"{d.render()}: no combination" for d in verdict.failing]
    record = OutputRecord("check", v.name, {"expression": expression, "certificate": certificate}, payload)
    emit(record, output_format, "\n".join(lines))
    if not holds:
        click.get_current_context().exit(EXIT_NOT_IDENTITY)


@cli.command()
@click.argument("n", type=int)
@click.option("--verify-family", is_flag=True, help="Check S_n invariance of p_n.")
@click.option("--fixed-dim", is_flag=True, help="Dimension of the S_n-fixed subspace.")
@click.option("--identity-check", is_flag=True, help="Check the symmetrization identities (n >= 5).")
@click.option("--format", "output_format", type=FORMATS, default="text")
@click.pass_obj
@handle_errors
def sym(session: Session, n, verify_family, fixed_dim, identity_check, output_format):
    """The symmetric polynomial p_N of the second type, in normal form."""
    if n < 1:
        raise DegreeTooSmall(n, 1)
    session.check_degree(n)
    engine = session.engine(AS2)
    p = build_p(n).poly
    normal = engine.nf(p)
    lines = [f"p{n} = {normal.render()}"]
    payload = {"p": normal.records()}
    if verify_family:
        ok = is_symmetric(p, n, engine)
        payload["invariant"] = ok
        lines.append(f"invariance: {'PASS' if ok else 'FAIL'}")
    if fixed_dim:
        dimension = symmetric_subspace_dim(n, engine)
        payload["fixed_dim"] = dimension
        lines.append(f"fixed-subspace dimension: {dimension}")
    if identity_check:
        report = verify_symmetrization_identity(n, engine)
        payload["identity_check"] = report.checks
        lines += report.lines()
    record = OutputRecord("sym", AS2.name, {"n": n}, payload)
    emit(record, output_format, "\n".join(lines))


@cli.command()
@click.argument("n", type=int)
@click.pass_obj
@handle_errors
def graph(session: Session, n):
    """DOT digraph of the multilinear basis pairs of degree N (N >= 5)."""
    click.echo(to_dot(basis_digraph(n, session.engine(AS2))), nl=False)


@cli.group()
def cache():
    """Store, load or show structure-constant caches."""


@cache.command("store")
@click.argument("variety")
@click.option("--path", default=None, type=click.Path(dir_okay=False))
@click.option("--generators", default=3, show_default=True, help="Generators x1..xk to enumerate.")
@click.option("--max-total", default=4, show_default=True, help="Largest total degree of a product.")
@click.pass_obj
@handle_errors
def cache_store(session: Session, variety, path, generators, max_total):
    v = session.variety(variety)
    session.check_degree(max_total)
    engine = session.engine(v)
    engine.low_degree_products(generators, max_total)
    cache_file = session.cache_file(engine, path)
    count = cache_file.store()
    click.echo(f"stored {count} constants in {cache_file.path}")


@cache.command("load")
@click.argument("variety")
@click.option("--path", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
@handle_errors
def cache_load(session: Session, variety, path):
    v = session.variety(variety)
    engine = engine_for(v, session.oracle, self_test=session.settings.self_test)
    cache_file = session.cache_file(engine, path)
    try:
        count = cache_file.load()
    except CacheCorrupt as exc:
        click.echo(f"Error: {exc} Cache ignored.", err=True)
        click.get_current_context().exit(EXIT_USAGE)
    if count is None:
        click.echo(f"cache miss: {cache_file.path}")
    else:
        click.echo(f"loaded {count} constants from {cache_file.path}")


@cache.command("show")
@click.argument("variety")
@click.option("--path", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
@handle_errors
def cache_show(session: Session, variety, path):
    v = session.variety(variety)
    engine = engine_for(v, session.oracle, self_test=session.settings.self_test)
    cache_file = session.cache_file(engine, path)
    constants = cache_file.read()
    if constants is None:
        click.echo(f"cache miss: {cache_file.path}")
        return
    click.echo(cache_file.serialize(constants), nl=False)


@cli.command()
@click.argument("variety")
@click.option("--mutations", is_flag=True, help="Also check that every perturbed identity fails.")
@click.pass_obj
@handle_errors
def suite(session: Session, variety, mutations):
    """Run the catalogued identities of VARIETY through the oracle."""
    v = session.variety(variety)
    results = run_identity_suite(v, session.oracle)
    if mutations:
        results += run_mutation_suite(v, session.oracle)
    for result in results:
        click.echo(f"{'PASS' if result.passed else 'FAIL'} {result.name}")
    if not all(r.passed for r in results):
        click.get_current_context().exit(EXIT_NOT_IDENTITY)


def main():
    cli(prog_name="malcev")


if __name__ == "__main__":
    main()
