"""Command line front end.

Exit codes: 0 when every verdict was computed, 1 for usage or manifest
problems, 2 when some verdict is an at-cutoff Unknown, 3 when the
quadratic refuses to split.  A failing law suite also exits 1.

Reports go to stdout as a text table, or as JSON with --json; --outdir
additionally writes <command>.csv and, when there is something to draw,
<command>.png.
"""

import os

import click

from . import __version__, report
from .errors import EngineError
from .laws import SUITES
from .manifest import load_manifest


@click.group()
@click.version_option(__version__, prog_name="torsiondual")
def cli():
    """Dualisable and compact classification for local torsion objects."""


def _emit(rep, as_json, outdir):
    click.echo(rep.to_json() if as_json else rep.to_text(), nl=False)
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        base = os.path.join(outdir, rep.data["command"])
        rep.write_csv(base + ".csv")
        from .plots import render
        render(rep, base + ".png")
    return 2 if report.has_unknown(rep) else 0


def _common(fn):
    fn = click.option("--outdir", type=click.Path(file_okay=False),
                      help="also write CSV and PNG files here")(fn)
    fn = click.option("--json", "as_json", is_flag=True,
                      help="emit the JSON report instead of the table")(fn)
    fn = click.option("--manifest", "manifest_path", required=True,
                      metavar="PATH", help="input manifest (JSON)")(fn)
    return fn


def _cutoff(fn):
    return click.option("--cutoff", type=int,
                        help="resolution depth bound")(fn)


@cli.command()
@_common
@_cutoff
def classify(manifest_path, as_json, outdir, cutoff):
    """Dualisable / compact / shifted-unit verdicts per object."""
    m = load_manifest(manifest_path)
    return _emit(report.run_classify(m, cutoff=cutoff), as_json, outdir)


@cli.command()
@_common
@_cutoff
def betti(manifest_path, as_json, outdir, cutoff):
    """Betti table at the manifest prime, with a finiteness decision."""
    m = load_manifest(manifest_path)
    return _emit(report.run_betti(m, cutoff=cutoff), as_json, outdir)


@cli.command()
@_common
def homology(manifest_path, as_json, outdir):
    """Homology of each object, degree by degree."""
    m = load_manifest(manifest_path)
    return _emit(report.run_homology(m), as_json, outdir)


@cli.command()
@_common
@_cutoff
def tensor(manifest_path, as_json, outdir, cutoff):
    """Derived tensor product of the manifest's two objects."""
    m = load_manifest(manifest_path)
    return _emit(report.run_tensor(m, cutoff=cutoff), as_json, outdir)


@cli.command()
@_common
@_cutoff
def dual(manifest_path, as_json, outdir, cutoff):
    """Dual of the manifest's object against the unit."""
    m = load_manifest(manifest_path)
    return _emit(report.run_dual(m, cutoff=cutoff), as_json, outdir)


@cli.command("gm-check")
@_common
def gm_check(manifest_path, as_json, outdir):
    """Torsion/completion adjunction identities on invariants objects."""
    m = load_manifest(manifest_path)
    return _emit(report.run_gm_check(m), as_json, outdir)


@cli.command()
@click.argument("discriminant")
@click.option("--precision", type=int, default=8, show_default=True,
              help="series precision for the splitting")
@click.option("--json", "as_json", is_flag=True)
@click.option("--outdir", type=click.Path(file_okay=False))
def hensel(discriminant, precision, as_json, outdir):
    """Split x^2 - c(y) over the completed local ring, or certify why not.

    DISCRIMINANT is a rational polynomial in y, e.g. "y^2 + y^3".
    """
    rep = report.run_hensel(discriminant, precision)
    code = _emit(rep, as_json, outdir)
    if rep.data["results"]["status"] == "irreducible":
        return 3
    return code


@cli.command("kproj-demo")
@_common
@_cutoff
def kproj_demo(manifest_path, as_json, outdir, cutoff):
    """Rank growth of dual-tensor-dual over a hypersurface quotient.

    Uses the manifest's module objects, or the residue field when the
    manifest names none.
    """
    m = load_manifest(manifest_path)
    return _emit(report.run_kproj(m, cutoff=cutoff), as_json, outdir)


@cli.command()
@_common
def spectrum(manifest_path, as_json, outdir):
    """Describe Spec of the completed local ring at the manifest prime."""
    m = load_manifest(manifest_path)
    return _emit(report.run_spectrum(m), as_json, outdir)


@cli.group()
def laws():
    """Structural law checking."""


@laws.command("run")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--suite", type=click.Choice(SUITES), default=None,
              help="run a single suite instead of all of them")
@click.option("--json", "as_json", is_flag=True)
@click.option("--outdir", type=click.Path(file_okay=False))
def laws_run(seed, suite, as_json, outdir):
    """Run the randomised law suites and report per-case verdicts."""
    rep = report.run_laws(seed=seed, suite=suite)
    code = _emit(rep, as_json, outdir)
    if rep.data["results"]["failed"]:
        return 1
    return code


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="torsiondual",
                      standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.UsageError as e:
        click.echo("error: %s" % e.format_message(), err=True)
        return 1
    except EngineError as e:
        click.echo("error: %s" % e, err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
