"""Adapters turning a RunConfig into risk-curve rows for one family."""
import math
from typing import Any

from ratebound.core.errors import UsageError
from ratebound.models import categorical, gaussian, multinomial, zero_error
from ratebound.numerics.specfun import EULER_GAMMA
from ratebound.schemas.montecarlo import MonteCarloEstimate
from ratebound.schemas.run import RiskRow, RunConfig


class FamilyAdapter:
    """Base adapter; subclasses fill in bounds, simulation and MI for their family."""

    name: str = ""
    mi_methods: tuple[str, ...] = ()
    # column of RiskRow that compare checks the simulation against
    compare_column: str = "rd_lower_risk"
    bound_variants: dict[str, str] = {}
    notes: list[str] = []

    def __init__(self, config: RunConfig):
        self.config = config

    def params(self) -> dict[str, Any]:
        return {}

    def bounds(self, n: int) -> RiskRow:
        raise NotImplementedError

    def simulate(self, n: int) -> MonteCarloEstimate:
        raise NotImplementedError

    def mi(self, n: int, method: str) -> MonteCarloEstimate | float:
        raise NotImplementedError

    def default_mi_method(self) -> str:
        return self.mi_methods[0]

    def check_mi_method(self, method: str) -> None:
        if method not in self.mi_methods:
            supported = ", ".join(self.mi_methods)
            raise UsageError(f"{self.name} supports --method {supported}, not {method}")

    def sim_kwargs(self) -> dict[str, Any]:
        c = self.config
        return {"trials": c.trials, "seed": c.seed, "chunks": c.chunks, "workers": c.workers}


class CategoricalAdapter(FamilyAdapter):
    name = "categorical"
    mi_methods = ("clarke-barron",)
    bound_variants = {
        "rd_lower_risk": "rate-distortion inversion at the Clarke-Barron MI",
        "printed_bound": "published closed form (p in {1, 2, inf})",
        "reference_lower": "published minimax lower bound (symmetric prior, kappa >= 1, p = 1)",
        "reference_upper": "published minimax upper bound (p = 1)",
    }
    notes = ["the published L2 exponent lacks the 1/2 weights of the L1 and Linf forms"]

    def __init__(self, config: RunConfig):
        super().__init__(config)
        self.prior = config.categorical().prior

    def params(self) -> dict[str, Any]:
        return {"gamma": list(self.prior.gamma)}

    def bounds(self, n: int) -> RiskRow:
        p = self.config.p
        row = RiskRow(
            n=n,
            rd_lower_risk=categorical.bayes_risk_lower(n, self.prior, p),
            mi=categorical.mutual_information(n, self.prior),
        )
        if p in (1, 2) or math.isinf(p):
            row.printed_bound = categorical.printed_bayes_risk_lower(n, self.prior, p)
        if p == 1:
            gamma = self.prior.gamma
            kappa = gamma[0]
            lower, upper = categorical.kamath_bounds(n, self.prior.M, max(kappa, 1.0))
            row.reference_upper = upper
            if all(g == kappa for g in gamma) and kappa >= 1:
                row.reference_lower = lower
        return row

    def simulate(self, n: int) -> MonteCarloEstimate:
        return categorical.simulate_bayes_risk(n, self.prior, self.config.p, **self.sim_kwargs())

    def mi(self, n: int, method: str) -> float:
        return categorical.mutual_information(n, self.prior)


class MultinomialAdapter(FamilyAdapter):
    name = "multinomial"
    mi_methods = ("clarke-barron",)
    bound_variants = {
        "rd_lower_risk": "rate-distortion inversion with the published entropy bound",
        "printed_bound": "published closed form read with its bracket closed (p = 1)",
        "reference_lower": "rate-distortion inversion with the re-derived entropy bound",
    }
    notes = [
        "the published entropy bound exceeds the true entropy for k > 1 or d >= 3",
        "simulated risk is a maximum over the interpolation set, not over all of X",
    ]

    def __init__(self, config: RunConfig):
        super().__init__(config)
        self.family = config.multinomial()

    def params(self) -> dict[str, Any]:
        return {"d": self.family.d, "k": self.family.k, "gamma": list(self.family.prior.gamma)}

    def bounds(self, n: int) -> RiskRow:
        p = self.config.p
        return RiskRow(
            n=n,
            rd_lower_risk=multinomial.xbayes_risk_lower(n, self.family, p),
            printed_bound=multinomial.printed_xbayes_risk_lower(n, self.family) if p == 1 else None,
            mi=multinomial.mutual_information(n, self.family),
            reference_lower=multinomial.xbayes_risk_lower(n, self.family, p, entropy="rederived"),
        )

    def simulate(self, n: int) -> MonteCarloEstimate:
        return multinomial.simulate_interpolation_risk(n, self.family, p=self.config.p, **self.sim_kwargs())

    def mi(self, n: int, method: str) -> float:
        return multinomial.mutual_information(n, self.family)


class GaussianAdapter(FamilyAdapter):
    name = "gaussian"
    mi_methods = ("exact", "clarke-barron")
    compare_column = "printed_bound"
    bound_variants = {
        "rd_lower_risk": "rate-distortion inversion at the exact MI",
        "printed_bound": "published L1 closed form",
    }
    notes = ["the inversion at the exact MI is exactly half the published bound"]

    def __init__(self, config: RunConfig):
        super().__init__(config)
        self.family = config.gaussian()

    def params(self) -> dict[str, Any]:
        params = {"d": self.family.d, "sigma2": self.family.sigma2}
        if self.config.command in ("simulate", "compare"):
            params["test_points"] = self.config.test_points
        return params

    def bounds(self, n: int) -> RiskRow:
        d, sigma2 = self.family.d, self.family.sigma2
        risk = gaussian.bayes_risk_lower_l1(n, d, sigma2)
        return RiskRow(
            n=n,
            rd_lower_risk=risk.pipeline,
            printed_bound=risk.printed,
            mi=gaussian.mutual_information_exact(n, d, sigma2),
        )

    def simulate(self, n: int) -> MonteCarloEstimate:
        return gaussian.simulate_bayes_risk(
            n, self.family.d, self.family.sigma2, test_points=self.config.test_points, **self.sim_kwargs()
        )

    def mi(self, n: int, method: str) -> float:
        if method == "exact":
            return gaussian.mutual_information_exact(n, self.family.d, self.family.sigma2)
        return gaussian.mutual_information_cb(n, self.family.d, self.family.sigma2)


class ZeroErrorAdapter(FamilyAdapter):
    name = "zero-error"
    mi_methods = ("exact", "monte-carlo")
    bound_variants = {
        "rd_lower_risk": "E|theta - theta_hat| bound from the exact MI",
        "printed_bound": "E|theta - theta_hat| bound from the published sample complexity",
        "reference_upper": "exact risk 1/(2(n+2)) of the midpoint rule",
    }
    notes = [
        "risk columns are E|theta - theta_hat|, half the L1 risk",
        "the published midpoint risk 1/(4(n+1)) ignores the length bias of the spacing holding theta",
    ]

    def bounds(self, n: int) -> RiskRow:
        return RiskRow(
            n=n,
            rd_lower_risk=zero_error.risk_lower(n),
            printed_bound=math.exp(-EULER_GAMMA) / (4 * (n + 1)),
            mi=zero_error.mutual_information_exact(n),
            reference_upper=zero_error.estimator_risk_rederived(n).e_abs,
        )

    def simulate(self, n: int) -> MonteCarloEstimate:
        return zero_error.simulate_estimator_risk(n, **self.sim_kwargs())

    def mi(self, n: int, method: str) -> MonteCarloEstimate | float:
        if method == "exact":
            return zero_error.mutual_information_exact(n)
        return zero_error.mi_monte_carlo(n, **self.sim_kwargs())


ADAPTERS: dict[str, type[FamilyAdapter]] = {
    adapter.name: adapter
    for adapter in (CategoricalAdapter, MultinomialAdapter, GaussianAdapter, ZeroErrorAdapter)
}


def get_adapter(config: RunConfig) -> FamilyAdapter:
    return ADAPTERS[config.family](config)
