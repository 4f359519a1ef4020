"""Exact fits of moment sums against named functions of p."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import InconsistentFit, SingularFit
from ..linsys import rank, rref
from .basis import check_term, evaluate_term
from .families import Family, fraction_str, get_family
from .scan import CacheStore, moment_value


@dataclass(frozen=True)
class FitModel:
    family: str
    r: int
    basis: tuple[str, ...]
    coefficients: tuple[Fraction, ...]
    fit_primes: tuple[int, ...]

    def evaluate(self, p: int) -> Fraction:
        form = get_family(self.family).form
        return sum((c * evaluate_term(n, p, form) for c, n in zip(self.coefficients, self.basis)), Fraction(0))

    def coefficient(self, name: str) -> Fraction:
        return self.coefficients[self.basis.index(name)]

    def perturbed(self, index: int, delta=1) -> FitModel:
        coeffs = list(self.coefficients)
        coeffs[index] += delta
        return replace(self, coefficients=tuple(coeffs))

    def render(self) -> str:
        terms = " ".join(f"[{n}]={fraction_str(c)}" for n, c in zip(self.basis, self.coefficients))
        primes = ",".join(map(str, self.fit_primes))
        return f"family {self.family} r {self.r} fit_primes {primes}\ncoefficients {terms}"


@dataclass(frozen=True)
class ValidationReport:
    model: FitModel
    residuals: tuple[tuple[int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return all(res == 0 for _, res in self.residuals)

    def failures(self) -> list[tuple[int, Fraction]]:
        return [(p, res) for p, res in self.residuals if res != 0]

    def render(self) -> str:
        lines = [f"validate {self.model.family} r {self.model.r} primes {len(self.residuals)}"]
        lines += [f"p {p} residual {fraction_str(res)}" for p, res in self.residuals]
        lines.append("status " + ("ok" if self.ok else f"FAIL ({len(self.failures())} nonzero residuals)"))
        return "\n".join(lines)


MomentSource = Callable[[int], int]


def _moments(F: Family, r: int, cache: CacheStore | None) -> MomentSource:
    return lambda p: moment_value(F, p, r, cache)


def fit(F: Family | str, basis: Sequence[str], fit_primes: Sequence[int], *, r: int | None = None,
        cache: CacheStore | None = None, moments: MomentSource | None = None) -> FitModel:
    """Solve M_r(p) = sum c_i basis_i(p) exactly over the fit primes."""
    if isinstance(F, str):
        F = get_family(F)
    basis = tuple(basis)
    for name in basis:
        check_term(name)
    fit_primes = tuple(fit_primes)
    if len(fit_primes) < len(basis):
        raise SingularFit(f"{len(basis)} basis functions need at least as many fit primes")
    for p in fit_primes:
        F.check_prime(p)
    r = F.r if r is None else r
    values = moments or _moments(F, r, cache)
    rows = [[Fraction(evaluate_term(n, p, F.form)) for n in basis] for p in fit_primes]
    rhs = [Fraction(values(p)) for p in fit_primes]
    if rank(rows) < len(basis):
        raise SingularFit("basis functions are dependent on the fit primes")
    R, pivots = rref([row + [b] for row, b in zip(rows, rhs)])
    if len(basis) in pivots:
        raise InconsistentFit("no exact combination of the basis reproduces the moments")
    coeffs = tuple(R[i][len(basis)] for i in range(len(basis)))
    return FitModel(F.id, r, basis, coeffs, fit_primes)


def validate(M: FitModel, primes: Sequence[int], *, cache: CacheStore | None = None,
             moments: MomentSource | None = None) -> ValidationReport:
    F = get_family(M.family)
    values = moments or _moments(F, M.r, cache)
    residuals = []
    for p in primes:
        F.check_prime(p)
        residuals.append((p, Fraction(values(p)) - M.evaluate(p)))
    return ValidationReport(M, tuple(residuals))
