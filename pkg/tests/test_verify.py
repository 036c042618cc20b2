import dataclasses

from actcat import ordinal, verify


def test_delta_wrapped_passes():
    # the plain chain category is a known Reedy category
    cand = verify.delta_candidate(3, augmented=False)
    rep = verify.verify_reedy(cand)
    assert rep.passed, rep.failures[:3]


def test_delta_diamond_reedy_and_elegance():
    cand = verify.delta_candidate(3)
    assert verify.verify_reedy(cand).passed
    rep = verify.verify_elegance(cand)
    assert rep.passed
    assert rep.counts["squares_checked"] > 0
    assert any("probe coverage" in n for n in rep.notes)


def test_omegap_diamond_reedy_and_elegance():
    cand = verify.omegap_candidate(2, 3)
    assert verify.verify_reedy(cand).passed
    assert verify.verify_elegance(cand).passed
    # the full acceptance window
    assert verify.verify_reedy(verify.omegap_candidate(3, 4)).passed


def test_chain_small_window():
    cand = verify.chain_candidate(2, 2, probe_degree=6)
    assert verify.verify_reedy(cand).passed
    py = verify.verify_elegance(cand, fast=False)
    np_ = verify.verify_elegance(cand, fast=True)
    assert py.passed and np_.passed
    assert py.counts == np_.counts


def test_tree_small_window():
    cand = verify.tree_candidate(1, 2, 3, probe_degree=8)
    rep = verify.verify_reedy(cand)
    assert rep.passed, rep.failures[:3]
    py = verify.verify_elegance(cand, fast=False)
    np_ = verify.verify_elegance(cand, fast=True)
    assert py.passed and np_.passed
    assert py.counts == np_.counts


def test_injected_broken_minus_classifier_fails_degree_laws():
    # classifying by edge-surjectivity alone (dropping the leaf condition)
    # must produce degree-law failures with a minimal witness
    cand = verify.tree_candidate(0, 2, 2, probe_degree=4)

    def broken_classify(m):
        plus = (len(set(m.alpha)) == len(m.alpha)
                and len(set(m.beta)) == len(m.beta))
        minus = False
        from actcat import treeact
        if set(range(m.tgt.n + 1)).issubset(set(m.alpha)):
            _, d_map = treeact.hat_extend(m)
            minus = len(set(d_map)) == m.tgt.n_colors
        return plus, minus

    broken = dataclasses.replace(cand, classify=broken_classify)
    rep = verify.verify_reedy(broken)
    assert not rep.passed
    kinds = {f["kind"] for f in rep.failures}
    assert "minus-degree" in kinds
    w = rep.minimal_witness()
    assert w is not None and w["degrees"] == min(
        f["degrees"] for f in rep.failures)


def test_injected_broken_cospan_fails_pushout():
    cand = verify.delta_candidate(2)

    def broken_cospan(f, g):
        # always complete to the terminal collapse, which is usually not
        # a pushout
        t1 = ordinal.OrdinalMap(f.tgt_n, 0, (0,) * (f.tgt_n + 1)) \
            if f.tgt_n >= 0 else ordinal.identity(-1)
        t2 = ordinal.OrdinalMap(g.tgt_n, 0, (0,) * (g.tgt_n + 1)) \
            if g.tgt_n >= 0 else ordinal.identity(-1)
        return t1, t2

    broken = dataclasses.replace(cand, cospan=broken_cospan)
    rep = verify.verify_elegance(broken)
    assert not rep.passed
    assert any(f["kind"] == "square-not-pushout" for f in rep.failures)


def test_report_json_stable():
    cand = verify.delta_candidate(2)
    r1 = verify.verify_reedy(cand).to_json()
    r2 = verify.verify_reedy(verify.delta_candidate(2)).to_json()
    assert r1 == r2
    assert '"passed": true' in r1


def test_jobs_do_not_change_output():
    cand = verify.chain_candidate(1, 1, probe_degree=4)
    assert verify.verify_reedy(cand).to_json() == \
        verify.verify_reedy(cand, jobs=3).to_json()


def test_generalized_report():
    rep = verify.verify_generalized(0, 2, 3)
    assert rep.passed
    assert rep.counts["normal_forms"] > 0
    assert any("nontrivial symmetry" in n for n in rep.notes)
