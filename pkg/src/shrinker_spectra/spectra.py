"""Closed-form spectra of the Gaussian drift operator on model geometries.

The drift operator L f = trace Hessian f - <X, grad f> is self-adjoint for
the weighted measure e^{-|X|^2/2} dv.  Three model geometries admit exact
spectra:

* round sphere of radius sqrt(n):  the position vector is purely normal,
  the drift term vanishes on functions, and the levels are the rescaled
  Laplace-Beltrami eigenvalues l(l+n-1)/n with spherical-harmonic
  multiplicities;
* flat R^n:  the Ornstein-Uhlenbeck operator, levels 0, 1, 2, ... with
  Hermite-polynomial eigenfunctions and multinomial multiplicities;
* generalized cylinder S^k(sqrt k) x R^{n-k}:  the Minkowski sum of the
  two factor spectra with product multiplicities.

Sphere levels are computed in exact integer/rational arithmetic before the
single conversion to float, so equality checks downstream are exact up to
one rounding.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .errors import (
    InsufficientLevelsError,
    InsufficientSpectrumError,
    InvalidDimensionError,
    SpectrumParseError,
)

#: Absolute tolerance for grouping coinciding Minkowski sums.  All model
#: levels are rationals with denominator <= n, so true collisions agree to
#: a few ulps and distinct levels are separated by >= 1/n >> 1e-12.
TOL_MERGE = 1e-12

#: Numerically produced Dirichlet spectra may carry the first eigenvalue a
#: hair below zero (discretization error around a true value that is itself
#: ~1e-8 on wide intervals).  Construction tolerates that much and no more.
NUMERICAL_POSITIVITY_SLACK = 1e-6


class Kind(str, Enum):
    CLOSED = "closed"
    DIRICHLET = "dirichlet"


class Provenance(str, Enum):
    CLOSED_FORM = "closed_form"
    NUMERICAL = "numerical"
    EXTERNAL = "external"


@dataclass(frozen=True)
class EigenvalueSequence:
    """A sorted multiset of eigenvalues tagged by problem kind.

    ``entries`` holds (eigenvalue, multiplicity) pairs with strictly
    increasing eigenvalues.  A closed spectrum starts at exactly (0, 1)
    (the constant eigenfunction); a Dirichlet spectrum starts strictly
    above zero.
    """

    kind: Kind
    n: int
    entries: tuple[tuple[float, int], ...]
    provenance: Provenance = Provenance.CLOSED_FORM

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {self.n}")
        if not self.entries:
            raise ValueError("spectrum must contain at least one level")
        prev = None
        for lam, mult in self.entries:
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            if prev is not None and not lam > prev:
                raise ValueError("eigenvalue levels must be strictly increasing")
            prev = lam
        first = self.entries[0]
        if self.kind is Kind.CLOSED:
            if first != (0.0, 1):
                raise ValueError(
                    f"closed spectrum must start with the simple eigenvalue 0, got {first}"
                )
        else:
            floor = -NUMERICAL_POSITIVITY_SLACK if self.provenance is Provenance.NUMERICAL else 0.0
            if not first[0] > floor:
                raise ValueError(
                    f"Dirichlet spectrum must start strictly above zero, got {first[0]}"
                )

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def expand(self, count: int) -> list[float]:
        """First `count` eigenvalues repeated according to multiplicity."""
        out: list[float] = []
        for lam, mult in self.entries:
            take = min(mult, count - len(out))
            out.extend([lam] * take)
            if len(out) == count:
                return out
        raise InsufficientSpectrumError(
            f"spectrum provides {self.total_multiplicity} eigenvalues, need {count}"
        )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "entries": [{"lambda": lam, "mult": mult} for lam, mult in self.entries],
            "provenance": self.provenance.value,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EigenvalueSequence":
        try:
            entries = tuple((float(e["lambda"]), int(e["mult"])) for e in data["entries"])
            return cls(
                kind=Kind(data["kind"]),
                n=int(data["n"]),
                entries=entries,
                provenance=Provenance(data.get("provenance", "external")),
            )
        except SpectrumParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SpectrumParseError(f"malformed spectrum record: {exc}") from exc

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda", "mult"])
        for lam, mult in self.entries:
            writer.writerow([repr(lam), mult])
        return buf.getvalue()


def dump_spectrum(seq: EigenvalueSequence, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix == ".csv" else "json")
    if fmt == "csv":
        path.write_text(seq.to_csv())
    else:
        path.write_text(json.dumps(seq.to_json_dict(), indent=2) + "\n")


def load_spectrum(
    path: str | Path,
    kind: Kind = Kind.CLOSED,
    n: int = 1,
    provenance: Provenance = Provenance.EXTERNAL,
) -> EigenvalueSequence:
    """Read a spectrum file (JSON, or bare lambda/mult CSV).

    CSV files carry no metadata, so `kind` and `n` supply it; JSON files
    are self-describing and ignore those arguments.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".csv":
        try:
            rows = list(csv.reader(io.StringIO(text)))
            entries = tuple((float(lam), int(mult)) for lam, mult in rows[1:])
        except (ValueError, IndexError) as exc:
            raise SpectrumParseError(f"malformed spectrum CSV {path}: {exc}") from exc
        return EigenvalueSequence(kind=kind, n=n, entries=entries, provenance=provenance)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpectrumParseError(f"malformed spectrum JSON {path}: {exc}") from exc
    return EigenvalueSequence.from_json_dict(data)


# ---------------------------------------------------------------------------
# shrinker models and position-norm statistics
# ---------------------------------------------------------------------------


class Variant(str, Enum):
    SPHERE = "sphere"
    EUCLIDEAN = "euclidean"
    CYLINDER = "cylinder"


@dataclass(frozen=True)
class ShrinkerModel:
    """One of the model geometries with its position-norm statistics.

    ``codim`` is bookkeeping only: extra ambient coordinates vanish
    identically along the model and change no statistic below, so the
    coordinate eigenfunctions of eigenvalue 1 on the sphere always span an
    (n+1)-dimensional space regardless of codimension.
    """

    variant: Variant
    n: int
    k: int | None = None
    codim: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {self.n}")
        if self.variant is Variant.CYLINDER:
            if self.k is None or not 1 <= self.k < self.n:
                raise InvalidDimensionError(
                    f"cylinder needs 1 <= k < n, got k={self.k}, n={self.n}"
                )
        elif self.k is not None:
            raise InvalidDimensionError(f"{self.variant.value} takes no sphere factor k")
        if self.codim < 1:
            raise InvalidDimensionError(f"codimension must be >= 1, got {self.codim}")

    @classmethod
    def sphere(cls, n: int, codim: int = 1) -> "ShrinkerModel":
        return cls(Variant.SPHERE, n, codim=codim)

    @classmethod
    def euclidean(cls, n: int, codim: int = 1) -> "ShrinkerModel":
        return cls(Variant.EUCLIDEAN, n, codim=codim)

    @classmethod
    def cylinder(cls, k: int, n: int, codim: int = 1) -> "ShrinkerModel":
        return cls(Variant.CYLINDER, n, k=k, codim=codim)

    @property
    def is_compact(self) -> bool:
        return self.variant is Variant.SPHERE

    @property
    def min_x2(self) -> float:
        if self.variant is Variant.SPHERE:
            return float(self.n)
        if self.variant is Variant.EUCLIDEAN:
            return 0.0
        return float(self.k)

    @property
    def max_xn2(self) -> float:
        # sphere: |X|^2 = n with X fully normal; plane through the origin:
        # X^N = 0; cylinder: the normal part is the sphere-factor position,
        # of constant squared norm k.
        if self.variant is Variant.SPHERE:
            return float(self.n)
        if self.variant is Variant.EUCLIDEAN:
            return 0.0
        return float(self.k)

    @property
    def weighted_mean_x2(self) -> float:
        # Gaussian-weighted mean of |X|^2 is n on every model: constant n on
        # the sphere, the second moment of the unit Gaussian per flat
        # coordinate, and k + (n-k) on the cylinder.
        return float(self.n)


def position_norm_stats(model: ShrinkerModel) -> tuple[float, float, float]:
    """(min |X|^2, max |X^N|^2, weighted mean of |X|^2) in closed form."""
    return (model.min_x2, model.max_xn2, model.weighted_mean_x2)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _comb0(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 for b < 0."""
    return math.comb(a, b) if b >= 0 else 0


def sphere_multiplicity(level: int, n: int) -> int:
    """Dimension of the degree-`level` spherical harmonics on S^n."""
    return _comb0(n + level, level) - _comb0(n + level - 2, level - 2)


def sphere_spectrum(n: int, count: int) -> EigenvalueSequence:
    """First `count` distinct levels on the sphere of radius sqrt(n).

    Levels are l(l+n-1)/n: the drift term vanishes (the position vector is
    normal), leaving the Laplace-Beltrami operator of S^n(sqrt n), i.e. the
    unit-sphere eigenvalues divided by the squared radius n.  Level 1 is
    exactly 1 with multiplicity n+1, spanned by the ambient coordinate
    functions.
    """
    if n < 1:
        raise InvalidDimensionError(f"sphere dimension must be >= 1, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    entries = tuple(
        (float(Fraction(level * (level + n - 1), n)), sphere_multiplicity(level, n))
        for level in range(count)
    )
    return EigenvalueSequence(Kind.CLOSED, n, entries)


def ou_multiplicity(level: int, n: int) -> int:
    """Number of n-variate Hermite products of total degree `level`."""
    return math.comb(level + n - 1, n - 1)


def ou_spectrum(n: int, count: int) -> EigenvalueSequence:
    """First `count` levels of the Ornstein-Uhlenbeck operator on R^n.

    Eigenfunctions are products of probabilists' Hermite polynomials;
    level m collects all multi-degrees summing to m.
    """
    if n < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    entries = tuple((float(m), ou_multiplicity(m, n)) for m in range(count))
    return EigenvalueSequence(Kind.CLOSED, n, entries)


def merge_spectra(
    a: EigenvalueSequence, b: EigenvalueSequence, count: int
) -> EigenvalueSequence:
    """Minkowski-sum spectrum of a product: sorted pairwise sums, product
    multiplicities accumulated over sums that coincide within TOL_MERGE.

    The inputs are taken at face value as finite spectra; the caller must
    provide enough low levels of each factor that truncating the result at
    `count` levels reproduces the true product spectrum (see
    cylinder_spectrum / the rectangle solver, which arrange this).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    sums = sorted(
        (la + lb, ma * mb) for la, ma in a.entries for lb, mb in b.entries
    )
    grouped: list[list] = []
    for value, mult in sums:
        if grouped and value - grouped[-1][0] <= TOL_MERGE:
            grouped[-1][1] += mult
        else:
            grouped.append([value, mult])
    if len(grouped) < count:
        raise InsufficientLevelsError(
            f"inputs yield {len(grouped)} distinct levels, need {count}; "
            "supply more levels of each factor"
        )
    if any(p is Provenance.NUMERICAL for p in (a.provenance, b.provenance)):
        provenance = Provenance.NUMERICAL
    elif any(p is Provenance.EXTERNAL for p in (a.provenance, b.provenance)):
        provenance = Provenance.EXTERNAL
    else:
        provenance = Provenance.CLOSED_FORM
    kind = Kind.DIRICHLET if Kind.DIRICHLET in (a.kind, b.kind) else Kind.CLOSED
    entries = tuple((value, mult) for value, mult in grouped[:count])
    return EigenvalueSequence(kind, a.n + b.n, entries, provenance)


def cylinder_spectrum(k: int, n: int, count: int) -> EigenvalueSequence:
    """First `count` distinct levels on S^k(sqrt k) x R^{n-k}.

    Requesting count+1 levels from each factor makes the truncation exact:
    every omitted factor level exceeds the largest retained sum.
    """
    if not 1 <= k < n:
        raise InvalidDimensionError(f"cylinder needs 1 <= k < n, got k={k}, n={n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return merge_spectra(sphere_spectrum(k, count + 1), ou_spectrum(n - k, count + 1), count)
