from recdesign.composer import IngredientSet, compose
from recdesign.design import PointPartition
from recdesign.equations import build_system
from recdesign.report import plot_family_counts, plot_multipliers
from recdesign.search import enumerate_solutions, trivial_solution

PNG = b"\x89PNG"


def test_multiplier_plot(tmp_path):
    sols = list(enumerate_solutions(build_system(4, 8, 17, 18)))
    path = tmp_path / "m.png"
    plot_multipliers(sols, 4, 8, 35, path, title="4-(35,8)")
    assert path.read_bytes()[:4] == PNG


def test_multiplier_plot_without_solutions(tmp_path):
    path = tmp_path / "empty.png"
    plot_multipliers([], 2, 3, 8, path)
    assert path.read_bytes()[:4] == PNG


def test_family_plot(tmp_path):
    sys_ = build_system(2, 4, 4, 5)
    cd = compose(trivial_solution(sys_), IngredientSet(PointPartition(4, 5)))
    path = tmp_path / "f.png"
    plot_family_counts(cd, path)
    assert path.read_bytes()[:4] == PNG
