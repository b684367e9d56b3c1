"""
Tests for the parameter-space search
"""

from django.test import SimpleTestCase

from services import workers
from services.errors import InvalidJob, LimitZero, OracleMismatch
from services.gf import field_new
from services.search import (
    Family,
    Goal,
    SearchJob,
    SearchProgress,
    candidates,
    estimate_cost,
    iter_search,
    run_search,
    validate_job,
)


def gf13_self_dual_job(**kwargs):
    params = dict(ctx=field_new(13), n=5, k=4, family=Family.SELFDUAL_SOLVER, goal=Goal.SELF_DUAL)
    params.update(kwargs)
    return SearchJob(**params)


def gf11_mds_job(**kwargs):
    params = dict(ctx=field_new(11), n=5, k=4, family="cor33", goal="mds", mu=(1,), delta=(8,), tau=(4,))
    params.update(kwargs)
    return SearchJob(**params)


class JobValidationTestCase(SimpleTestCase):
    """Test job validation"""

    def test_zero_limits(self):
        """Test zero limits are rejected before anything else"""
        with self.assertRaises(LimitZero):
            validate_job(gf13_self_dual_job(max_hits=0))
        with self.assertRaises(LimitZero):
            validate_job(gf13_self_dual_job(max_candidates=0, n=6))

    def test_self_dual_length(self):
        """Test the self-dual goal needs n + 3 = 2k"""
        with self.assertRaises(InvalidJob):
            validate_job(gf13_self_dual_job(n=6))

    def test_solver_family_needs_self_dual_goal(self):
        """Test the solver family cannot serve the MDS goal"""
        with self.assertRaises(InvalidJob):
            validate_job(gf13_self_dual_job(goal=Goal.MDS))

    def test_sampling_needs_samples(self):
        """Test gl3-sample without samples is invalid"""
        with self.assertRaises(InvalidJob):
            validate_job(gf11_mds_job(family=Family.GL3_SAMPLE, samples=0))

    def test_explicit_alpha_sets(self):
        """Test listed alpha sets must have n distinct entries"""
        with self.assertRaises(InvalidJob):
            validate_job(gf11_mds_job(alpha_sets=[[0, 1, 2, 4]]))
        job = gf11_mds_job(alpha_sets=[[5, 4, 2, 1, 0], [0, 1, 2, 4, 5]])
        self.assertEqual(job.alpha_sets, ((0, 1, 2, 4, 5),))

    def test_string_enums_are_coerced(self):
        """Test family and goal accept their string values"""
        job = gf11_mds_job()
        self.assertIs(job.family, Family.COR33)
        self.assertIs(job.goal, Goal.MDS)
        self.assertEqual(job.to_dict()["family"], "cor33")


class CostAndCandidatesTestCase(SimpleTestCase):
    """Test the cost estimate and candidate order"""

    def test_cost(self):
        """Test candidate count and per-candidate checks"""
        cost = estimate_cost(gf11_mds_job())
        self.assertEqual(cost.candidate_count, 462)
        self.assertEqual(cost.per_candidate_subset_checks, 60)
        self.assertEqual(estimate_cost(gf13_self_dual_job()).candidate_count, 1287)

    def test_canonical_order(self):
        """Test alpha sets come out sorted and lexicographic"""
        first = [alpha for alpha, _ in list(candidates(gf11_mds_job()))[:3]]
        self.assertEqual(first, [(0, 1, 2, 3, 4), (0, 1, 2, 3, 5), (0, 1, 2, 3, 6)])


class SearchTestCase(SimpleTestCase):
    """Test search results"""

    def tearDown(self):
        workers.set_max_workers(None)

    def test_exact_self_dual_hits(self):
        """Test the exact self-dual scan over GF(13) finds two validated point sets"""
        hits = run_search(gf13_self_dual_job(validate=True))
        self.assertEqual([h.spec.alpha for h in hits], [(1, 2, 5, 8, 9), (4, 5, 8, 11, 12)])
        self.assertTrue(all(h.validated for h in hits))
        self.assertEqual(hits[0].lambda_, 9)
        self.assertEqual(hits[0].to_dict()["v"], [4, 5, 3, 5, 4])

    def test_printed_convention_finds_published_points(self):
        """Test the printed system reproduces the published GF(13) point set"""
        hits = run_search(gf13_self_dual_job(convention="printed"))
        self.assertIn((1, 4, 5, 6, 9), [h.spec.alpha for h in hits])

    def test_printed_hits_fail_validation(self):
        """Test the oracle rejects printed-convention hits"""
        job = gf13_self_dual_job(convention="printed", validate=True, alpha_sets=[[1, 4, 5, 6, 9]])
        with self.assertRaises(OracleMismatch):
            run_search(job)

    def test_max_hits(self):
        """Test the scan stops at max_hits"""
        progress = SearchProgress()
        hits = list(iter_search(gf11_mds_job(max_hits=1), progress))
        self.assertEqual(len(hits), 1)
        self.assertEqual(progress.hits, 1)

    def test_max_candidates(self):
        """Test the scan stops after max_candidates"""
        progress = SearchProgress()
        list(iter_search(gf11_mds_job(max_candidates=10), progress))
        self.assertEqual(progress.examined, 10)

    def test_mds_scan_contains_example(self):
        """Test the GF(11) MDS scan finds {0,1,2,4,5} and validates it"""
        hits = run_search(gf11_mds_job(alpha_sets=[[0, 1, 2, 4, 5]], validate=True))
        self.assertEqual(len(hits), 1)
        self.assertTrue(hits[0].validated)
        self.assertTrue(hits[0].report.holds)

    def test_results_do_not_depend_on_pool_size(self):
        """Test one worker and four workers give the same hit list"""
        workers.set_max_workers(1)
        single = [h.to_dict() for h in run_search(gf11_mds_job(max_candidates=120))]
        workers.set_max_workers(4)
        pooled = [h.to_dict() for h in run_search(gf11_mds_job(max_candidates=120))]
        self.assertEqual(single, pooled)

    def test_seeded_sampling_is_deterministic(self):
        """Test gl3-sample draws the same matrices for the same seed"""
        job = gf11_mds_job(family="gl3-sample", samples=4, seed=5, alpha_sets=[[0, 1, 2, 4, 5], [0, 1, 3, 6, 9]])
        first = [h.to_dict() for h in run_search(job)]
        second = [h.to_dict() for h in run_search(job)]
        self.assertEqual(first, second)
        self.assertEqual(estimate_cost(job).candidate_count, 8)
