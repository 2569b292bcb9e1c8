from fractions import Fraction
from unittest import mock

from django.test import SimpleTestCase

from hgm.V1.engine import nslat
from hgm.V1.engine.nslat import GramLattice, SectionProfile
from hgm.V1.exceptions import DomainError, LatticeError
from hgm.V1.management.commands import lattice as lattice_command


class GramLatticeTests(SimpleTestCase):

    def test_standard_lattices(self):
        e8 = nslat.standard_lattice("E8(-1)")
        self.assertEqual(e8.det(), 1)
        self.assertEqual(e8.signature(), (0, 8))
        self.assertTrue(e8.is_even())
        self.assertEqual(nslat.standard_lattice("U").signature(), (1, 1))
        self.assertEqual(nslat.standard_lattice("<-4>").entries(), [[-4]])
        with self.assertRaises(DomainError):
            nslat.standard_lattice("D4")

    def test_direct_sum_and_rescale(self):
        lattice = nslat.direct_sum(nslat.standard_lattice("U"), nslat.standard_lattice("A1(-1)"))
        self.assertEqual(lattice.det(), 2)
        self.assertEqual(nslat.rescale(lattice, 2).det(), 16)

    def test_rejects_non_symmetric(self):
        with self.assertRaises(LatticeError):
            GramLattice([[0, 1], [2, 0]])


class GenericLatticeTests(SimpleTestCase):

    def test_rank_det_signature(self):
        lattice = nslat.ns_gram_generic()
        self.assertEqual(lattice.rank, 19)
        self.assertEqual(lattice.det(), 4)
        self.assertEqual(lattice.signature(), (1, 18))
        self.assertTrue(lattice.is_even())

    def test_blocks(self):
        lattice = nslat.ns_gram_generic()
        e8 = nslat.standard_lattice("E8(-1)")
        for name in ("L1", "L2"):
            block = lattice.block(nslat.BLOCKS[name])
            self.assertEqual(block.det(), 1)
            self.assertEqual(block.signature(), e8.signature())
        self.assertEqual(lattice.block(nslat.BLOCKS["U1"]).entries(), [[0, 1], [1, -2]])
        self.assertEqual(lattice.block(nslat.BLOCKS["gamma"]).entries(), [[-4]])

    def test_fibre_classes(self):
        for name, values in nslat.fibre_class_checks().items():
            self.assertEqual(values, (0, 1, 1), name)


class SectionTests(SimpleTestCase):

    def test_heights(self):
        self.assertEqual(nslat.height(SectionProfile.optimal()), 4)
        self.assertEqual(nslat.height(SectionProfile.optimal(p_g3=1)), 3)
        self.assertEqual(nslat.height(SectionProfile.optimal(1, 1, 0)), Fraction(7, 4))
        self.assertEqual(nslat.height(SectionProfile.optimal(p_O=2)), 8)

    def test_delta_enumeration(self):
        self.assertEqual(nslat.delta_enumeration(), {(0, 0, 0), (0, 0, 1), (1, 1, 0)})
        self.assertFalse(nslat.is_admissible(SectionProfile.optimal(p_e7=1)))

    def test_delta_enumeration_raises_on_unexpected_profiles(self):
        with mock.patch.object(nslat, "EXPECTED_ADMISSIBLE", frozenset({(0, 0, 0)})):
            with self.assertRaises(LatticeError):
                nslat.delta_enumeration()
        with mock.patch.object(nslat, "is_admissible", return_value=True):
            with self.assertRaises(LatticeError):
                nslat.delta_enumeration()

    def test_delta_report_fails_instead_of_raising(self):
        self.assertTrue(lattice_command.delta_report().passed)
        with mock.patch.object(nslat, "is_admissible", return_value=False):
            report = lattice_command.delta_report()
        self.assertFalse(report.passed)
        self.assertIn("differ", report.reason)

    def test_profile_validation(self):
        with self.assertRaises(DomainError):
            SectionProfile(p_e7=2)
        with self.assertRaises(DomainError):
            SectionProfile.optimal(p_g2=1, p_g3=1)

    def test_cm_blocks(self):
        self.assertEqual(nslat.cm_block(SectionProfile.optimal()).entries(), [[-4, 0], [0, -4]])
        self.assertEqual(nslat.cm_block(SectionProfile.optimal(p_g3=1)).entries(), [[-4, 2], [2, -4]])
        self.assertEqual(nslat.cm_block(SectionProfile.optimal(1, 1, 0)).entries(), [[-4, 1], [1, -2]])
        self.assertEqual(nslat.cm_block(SectionProfile.optimal(p_O=1)).entries(), [[-4, 0], [0, -6]])
        with self.assertRaises(DomainError):
            nslat.cm_block(SectionProfile.optimal(p_e7=1))

    def test_rank20_lattices(self):
        for bits in sorted(nslat.EXPECTED_ADMISSIBLE):
            for p_o in (0, 1, 2):
                profile = SectionProfile.optimal(*bits, p_O=p_o)
                lattice, name = nslat.ns_cm_gram(profile)
                self.assertEqual(lattice.rank, 20)
                self.assertEqual(lattice.det(), -4 * nslat.height(profile))
                self.assertEqual(nslat.ns_gram_with_section(profile).det(), lattice.det())
                self.assertEqual(nslat.classify_block(nslat.cm_block(profile)), (name, p_o))

    def test_mw_block_at_t1(self):
        self.assertEqual(nslat.mw_block_t1().entries(), [[-2, 1, 0], [1, 0, 0], [0, 0, -4]])


class ComplementTests(SimpleTestCase):

    def test_u2_complement(self):
        self.assertEqual(nslat.u2_complement(-2, 0, -2).entries(), [[4, 0], [0, 4]])
        self.assertEqual(nslat.u2_complement(-2, 1, -1).entries(), [[4, 1], [1, 2]])
        self.assertEqual(nslat.u2_complement(-2, 2, -2).entries(), [[4, 2], [2, 4]])

    def test_transcendental_of_block(self):
        block = GramLattice([[-4, 0], [0, -6]])
        self.assertEqual(nslat.transcendental_of(block).entries(), [[4, 0], [0, 6]])
        with self.assertRaises(DomainError):
            nslat.transcendental_of(GramLattice([[-3, 0], [0, -4]]))

    def test_integer_kernel(self):
        kernel = nslat.integer_kernel([[1, 2, 3]])
        self.assertEqual(kernel.cols, 2)
        self.assertTrue(all(v == 0 for v in (nslat.Matrix([[1, 2, 3]]) * kernel)))


class ClassifyTests(SimpleTestCase):

    def test_classify(self):
        self.assertEqual(nslat.classify_block(GramLattice([[-4, 0], [0, -6]])), ("L0", 1))
        self.assertEqual(nslat.classify_block(GramLattice([[-2, 0], [0, -4]])), ("L4", None))
        self.assertEqual(nslat.classify_block(GramLattice([[-4, 2], [2, -38]])), ("L2", 17))
        self.assertEqual(nslat.classify_block(GramLattice([[-6, 0], [0, -6]])), (None, None))

    def test_cm_rows(self):
        reports = nslat.verify_cm_blocks()
        self.assertEqual(len(reports), 15)
        self.assertTrue(all(r.passed for r in reports), [r for r in reports if not r.passed])
        by_t = {r.t: r for r in reports}
        self.assertEqual(by_t["1"].variant, "L4")
        self.assertEqual(by_t["9"].details["p_O"], 1)
        self.assertEqual(by_t["-777924"].details["p_O"], 17)

    def test_cm_rows_flag_unknown_block(self):
        reports = nslat.verify_cm_blocks([(Fraction(5), (-6, 0, -6))])
        self.assertFalse(reports[0].passed)
