"""Per-iteration diagnostics shared by the two decision solvers."""

from dataclasses import dataclass, field


@dataclass
class IterationRecord:
    iteration: int
    weight_norm: float        # ||r||_1 resp. ||c||_1 at the start of the iteration
    energy: float             # electrical energy at the start of the iteration
    invariant_ratio: float | None  # progress ratio of the update that produced these weights
    n_boosted: int            # coordinates with alpha > 1
    max_factor: float
    averaged: bool            # iterate entered the running average


@dataclass
class IterationTrace:
    records: list[IterationRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    @property
    def iterations(self):
        return len(self.records)

    CSV_HEADER = "iteration,weight_norm,energy,invariant_ratio,n_boosted,max_factor,averaged"

    def csv_rows(self):
        for rec in self.records:
            ratio = "" if rec.invariant_ratio is None else repr(rec.invariant_ratio)
            yield (f"{rec.iteration},{rec.weight_norm!r},{rec.energy!r},{ratio},"
                   f"{rec.n_boosted},{rec.max_factor!r},{int(rec.averaged)}")

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for row in self.csv_rows():
                fh.write(row + "\n")
