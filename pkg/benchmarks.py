import random
import time

from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.generic import engine_for
from malcev.pi.oracle.tideal import AS2, AS3, TIdealOracle


class DimensionBenchmark:
    """
    Times the oracle's quotient dimensions on multilinear components.
    """
    def __init__(self, variety, degrees=range(1, 7)):
        self.variety = variety
        self.degrees = list(degrees)

    def evaluate(self, oracle=None):
        """
        Computes every dimension with a fresh oracle unless one is given.

        :param oracle: TIdealOracle to use.
        :return: A list of (n, dimension, seconds).
        """
        oracle = oracle or TIdealOracle()
        rows = []
        for n in self.degrees:
            started = time.perf_counter()
            dimension = oracle.dim_quotient(self.variety, Multidegree.multilinear(n))
            rows.append((n, dimension, time.perf_counter() - started))
        return rows


class NormalFormBenchmark:
    """
    Compares the structural and the oracle path of an engine on random words.
    """
    def __init__(self, variety, degree=6, samples=200, seed=0):
        self.variety = variety
        self.degree = degree
        self.samples = samples
        self.seed = seed

    def evaluate(self, oracle=None):
        """
        :param oracle: TIdealOracle shared by the engine.
        :return: Seconds per path and the number of disagreements (expected 0).
        """
        rng = random.Random(self.seed)
        engine = engine_for(self.variety, oracle or TIdealOracle())
        words = [
            FreePoly.monomial(rng.sample(range(1, self.degree + 1), self.degree)) for _ in range(self.samples)
        ]
        timings = {}
        results = {}
        for via in ("oracle", "structural"):
            started = time.perf_counter()
            results[via] = [engine.nf(w, via=via) for w in words]
            timings[via] = time.perf_counter() - started
        mismatches = sum(a != b for a, b in zip(results["oracle"], results["structural"]))
        return {"seconds": timings, "mismatches": mismatches}


# Run the benchmarks
if __name__ == "__main__":
    for variety in (AS2, AS3):
        for n, dimension, seconds in DimensionBenchmark(variety).evaluate():
            print(f"{variety.name} n={n}: dim {dimension} in {seconds:.2f}s")
        report = NormalFormBenchmark(variety).evaluate()
        print(f"{variety.name} nf: {report}")
