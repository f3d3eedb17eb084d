"""Show that the verification harness can fail.

Runs the full property suite on every connected graph of a small order, then
repeats the soundness check with every threshold multiplied by a factor
below one.  The first run should be clean; the mutated run should produce
counterexamples, each naming the graph, the row that fired and the exact
connectivity that contradicts it.

    python demos/harness_selftest.py --order 5 --scale 0.5
"""

import argparse
import json

from spectral_connectivity.corpus import CorpusSpec
from spectral_connectivity.verify import PROPERTIES, SOUNDNESS, run_campaign


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=5)
    parser.add_argument("--scale", type=float, default=0.5)
    parser.add_argument("--show", type=int, default=3)
    args = parser.parse_args()

    spec = CorpusSpec("exhaustive", n=args.order)
    honest = run_campaign(spec, PROPERTIES)
    print(f"honest run: {honest.graphs} graphs, {len(honest.counterexamples)} counterexamples, "
          f"{len(honest.razor_edges)} razor-edge rows, {honest.elapsed:.2f} s")

    mutated = run_campaign(spec, (SOUNDNESS,), scale=args.scale)
    print(f"thresholds x {args.scale}: {len(mutated.counterexamples)} counterexamples")
    for c in mutated.counterexamples[:args.show]:
        print("  " + json.dumps(c.to_dict(), sort_keys=True))


if __name__ == "__main__":
    main()
