"""Catalog sweeps: asserting theorem instances, probing open questions.

The catalog is a deterministic family list (cyclic, dihedral, symmetric,
alternating, psl2, products, small wreaths).  Suites check every (group,
pi) instance of the registered statements; probes hunt for counterexamples
to the open questions and certify anything they find.
"""

from hallperm import build_catalog, run_probe, run_suite

print("== the catalog up to order 60 ==")
for entry in build_catalog(60):
    print(f"  {entry.name:24s} degree {entry.group.degree:3d} order {entry.group.order()}")

print("\n== suites over the order <= 60 catalog ==")
for name in ("theorem1", "theorem2", "lemmas", "classical-pronormal", "towers"):
    result = run_suite(name, 60)
    print(f"  {name:20s} {result.checked:5d} checks, {len(result.violations)} violations,"
          f" {len(result.indeterminates)} indeterminate  [{result.elapsed:.1f}s]")

print("\n== probes over the order <= 60 catalog ==")
for conjecture in ("9", "11"):
    result = run_probe(conjecture, 60)
    print(f"  probe {conjecture}: {result.checked} Hall subgroups probed,"
          f" findings: {len(result.findings)}  [{result.elapsed:.1f}s]")

print("\nscale the sweeps up with run_suite(name, 500) or the CLI:")
print("  hallperm suite theorem2 --max-order 500")
print("  hallperm probe 9 --max-order 300")
