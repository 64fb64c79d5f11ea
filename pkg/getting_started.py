import logging

from twisted_link import (LatticeAbelianEndo, LatticeAbelianGroup, QuasicyclicEndo, ReportDb, Settings,
                          all_automorphisms, character_table, fixed_abelian, quasicyclic_fixed, reidemeister_abelian,
                          reidemeister_number, run_corpus, symmetric, verify_tbft_finite)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)

    S4 = symmetric(4)
    table = character_table(S4)
    print("S4 character degrees", table.degrees, "mod", table.prime)
    for phi in all_automorphisms(S4)[:4]:
        tbft = verify_tbft_finite(S4, phi)
        print("R(phi) =", reidemeister_number(S4, phi), "fixed characters:", tbft.fixed_characters)

    # x -> -x on Z/6
    e = LatticeAbelianEndo(LatticeAbelianGroup(1, [[6]]), [[5]])
    print("Z/6 negation: R =", reidemeister_abelian(e), "|C| =", fixed_abelian(e).order)

    # x -> 3x on Z(2^inf)
    print("Z(2^inf) times 3: |C| =", quasicyclic_fixed(QuasicyclicEndo(2, 1, [[3]])))

    small = {
        "groups": [{"name": "D4", "constructor": "dihedral", "args": [4]}],
        "abelian": [{"name": "quarter-turn", "ambient_rank": 2, "relations": [], "matrix": [[0, -1], [1, 0]]}],
    }
    reports = run_corpus(small, Settings({'workers': 2}))
    with ReportDb("getting_started.db") as db:
        db.store_reports("getting-started", reports)
    for report in reports:
        print("PASS" if report.passed else "FAIL", report.case_id)
