// Acceptance run: one PASS/FAIL line per criterion. Every comparison is
// exact; the only tolerances are the wall-clock budgets below.

#include "vertexcone/vertexcone.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace vcone;

namespace {

constexpr double kGroupOrderBudgetSeconds = 10;
constexpr double kStructureBudgetSeconds = 300;
constexpr double kConstructionBudgetSeconds = 60;
constexpr auto kLargeIrupBudget = std::chrono::minutes(10);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what << std::endl;
    if (!ok)
        ++failures;
}

// Runs one criterion; an unexpected exception is a failure.
template <class F>
void criterion(int n, const std::string& name, F body) {
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    report(n, ok, name + " (" + detail.str() + ")");
}

std::vector<BigInt> coprime_tuple(std::mt19937_64& rng, std::size_t d, long det_max) {
    for (;;) {
        std::vector<BigInt> a;
        long det = 1;
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            long room = det_max / det;
            long rest = 1L << (d - i - 1); // later entries need at least 2 each
            long hi = room / rest;
            if (hi < 2) {
                ok = false;
                break;
            }
            long x = std::uniform_int_distribution<long>(2, hi)(rng);
            for (const auto& y : a)
                ok = ok && gcd(BigInt(x), y) == 1;
            a.emplace_back(x);
            det *= x;
        }
        if (ok)
            return a;
    }
}

Instance random_sizes(std::mt19937_64& rng, std::size_t d, long max_den) {
    std::vector<Rational> s;
    for (std::size_t i = 0; i < d; ++i) {
        long q = std::uniform_int_distribution<long>(1, max_den)(rng);
        long p = std::uniform_int_distribution<long>(1, q)(rng);
        s.emplace_back(p, q);
    }
    return Instance(std::move(s), {});
}

Point random_b(std::mt19937_64& rng, std::size_t d, std::int64_t hi) {
    Point b(d);
    for (auto& v : b)
        v = std::uniform_int_distribution<std::int64_t>(0, hi)(rng);
    return b;
}

std::vector<std::vector<BigInt>> criterion1_tuples() {
    std::mt19937_64 rng(101);
    std::vector<std::vector<BigInt>> out;
    for (int t = 0; t < 30; ++t)
        out.push_back(coprime_tuple(rng, 2, 100'000));
    for (int t = 0; t < 30; ++t)
        out.push_back(coprime_tuple(rng, 3, 100'000));
    return out;
}

std::vector<std::vector<BigInt>> criterion2_tuples() {
    std::vector<std::vector<long>> raw{{3, 4},       {3, 4, 5},    {2, 3, 5},    {3, 5, 7},   {4, 5, 7},
                                       {5, 7, 9},    {7, 8, 9},    {9, 10, 11},  {7, 11, 13}, {11, 13, 16},
                                       {13, 16, 17}, {16, 17, 19}, {17, 19, 23}, {5, 37, 53}};
    std::vector<std::vector<BigInt>> out;
    for (const auto& r : raw) {
        std::vector<BigInt> a;
        for (auto x : r)
            a.emplace_back(x);
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace

int main() {
    const auto start = Clock::now();

    criterion(1, "group order equals det by lattice point count", [](std::ostream& os) {
        auto t0 = Clock::now();
        auto tuples = criterion1_tuples();
        bool ok = tuples.size() >= 50;
        for (const auto& a : tuples) {
            auto inst = Instance::unit_fractions(a);
            std::vector<Point> cols;
            for (const auto& v : hull_vertices(inst).vertices)
                if (!is_zero(v))
                    cols.push_back(v);
            auto count = oracle::parallelepiped_points(cols);
            ok = ok && BigInt(static_cast<unsigned long>(count)) == DiagonalBasis(a).determinant();
        }
        double s = seconds_since(t0);
        os << tuples.size() << " tuples, d in {2,3}, det <= 1e5, " << s << " s, budget " << kGroupOrderBudgetSeconds << " s";
        return ok && s < kGroupOrderBudgetSeconds;
    });

    criterion(2, "fractional sizes k/det each hit once", [](std::ostream& os) {
        bool ok = true;
        std::size_t n = 0;
        for (const auto& a : criterion2_tuples()) {
            DiagonalBasis basis(a);
            const BigInt det = basis.determinant();
            std::vector<char> seen(det.get_ui(), 0);
            GroupElement e = group_zero(basis);
            std::uint64_t elements = 0;
            for (;;) {
                Rational f = size_of(e, basis).frac();
                ok = ok && f.num() >= 0;
                BigInt k = f.num() * (det / f.den());
                ok = ok && (det % f.den()) == 0 && k < det;
                if (ok) {
                    ok = !seen[k.get_ui()];
                    seen[k.get_ui()] = 1;
                    ok = ok && element_of_fractional_size(basis, k) == e;
                }
                ++elements;
                bool carry = true;
                for (std::size_t i = basis.dimension(); carry && i-- > 0;) {
                    carry = ++e.residues[i] == basis.denominators()[i];
                    if (carry)
                        e.residues[i] = 0;
                }
                if (carry || !ok)
                    break;
            }
            ok = ok && BigInt(static_cast<unsigned long>(elements)) == det &&
                 std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; });
            ++n;
        }
        os << n << " bases including (3,4) and triples with det <= 1e4";
        return ok;
    });

    criterion(3, "full generator by congruence equals scan", [](std::ostream& os) {
        auto tuples = criterion1_tuples();
        for (auto& t : criterion2_tuples())
            tuples.push_back(t);
        bool ok = true;
        for (const auto& a : tuples) {
            DiagonalBasis basis(a);
            auto scan = oracle::generator_by_scan(basis);
            ok = ok && scan && *scan == full_generator(basis);
        }
        os << tuples.size() << " tuples";
        return ok;
    });

    criterion(4, "level recurrence under wrap jumps", [](std::ostream& os) {
        std::mt19937_64 rng(104);
        bool ok = true;
        for (int t = 0; t < 200; ++t) {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
            const long q = std::uniform_int_distribution<long>(1, 1000)(rng);
            std::vector<long> cuts{0, q};
            for (std::size_t i = 0; i < d; ++i)
                cuts.push_back(std::uniform_int_distribution<long>(0, q)(rng));
            std::sort(cuts.begin(), cuts.end());
            std::vector<Rational> x;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                x.emplace_back(cuts[i + 1] - cuts[i], q);
            ok = ok && check_level_recurrence(x, 1000, JumpRule::Wrap).holds;
        }
        std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
        auto wrap = check_level_recurrence(half, 2, JumpRule::Wrap);
        auto ceil = check_level_recurrence(half, 2, JumpRule::Ceiling);
        bool documented = wrap.holds && !ceil.holds && ceil.first_failure == 2;
        os << "200 vectors, d <= 4, K <= 1000; x=(1/2,1/2) K=2: ceiling rule " << (ceil.holds ? "holds" : "fails")
           << ", wrap rule " << (wrap.holds ? "holds" : "fails");
        return ok && documented;
    });

    criterion(5, "decompose_multiple reconstructs K gamma", [](std::ostream& os) {
        std::mt19937_64 rng(105);
        int done = 0;
        bool ok = true;
        while (done < 200) {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
            auto a = coprime_tuple(rng, d, 10'000);
            auto inst = Instance::unit_fractions(a);
            auto V = hull_vertices(inst);
            auto configs = enumerate_configs(inst);
            const auto& gamma = configs[std::uniform_int_distribution<std::size_t>(0, configs.size() - 1)(rng)];
            auto basis = containing_simplex(gamma, V);
            auto x = barycentric(gamma, basis);
            const std::int64_t K = find_shift_multiplicity(x.coords);
            auto dec = decompose_multiple(gamma, K, basis);
            Point sum = dec.delta;
            for (std::size_t j = 0; j < basis.size(); ++j)
                sum = add(sum, scaled(basis[j], dec.Lambda[j]));
            ok = ok && sum == scaled(gamma, K) && is_config(inst, dec.delta) && dec.level <= 1;
            ++done;
        }
        os << done << " configurations, d <= 3, det <= 1e4";
        return ok;
    });

    criterion(6, "structure decomposition bounds and Dist", [](std::ostream& os) {
        auto t0 = Clock::now();
        std::mt19937_64 rng(106);
        int instances = 0, small = 0, positive = 0;
        std::uint64_t most_configs = 0;
        bool ok = true;
        while (instances < 100) {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
            Instance base = instances % 2 ? random_sizes(rng, d, 10)
                                          : Instance::unit_fractions(coprime_tuple(rng, d, d == 1 ? 40 : 9'000));
            const auto n_configs = count_configs(base, unbounded_box(base.row()), 10'001);
            if (n_configs > 10'000)
                continue;
            const bool tiny = n_configs <= 500;
            most_configs = std::max<std::uint64_t>(most_configs, n_configs);
            auto inst = base.with_multiplicities(random_b(rng, d, tiny ? 5 : 12));
            auto V = hull_vertices(inst);
            auto rep = structure_decompose(inst, V);
            const auto dd = static_cast<std::int64_t>(d);
            bool here = rep.weights.target() == inst.multiplicities() &&
                        static_cast<std::int64_t>(rep.vertex_support) <= (dd << dd) &&
                        static_cast<std::int64_t>(rep.non_vertex_support) <= (std::int64_t{1} << (2 * dd));
            for (const auto& [p, w] : rep.weights.entries())
                here = here && is_config(inst, p);
            auto dist = vertex_distance(inst, V);
            here = here && rep.non_vertex_mass >= dist.value;
            positive += dist.value > 0;
            if (tiny) {
                // Both routes find a decomposition and the exhaustive minimum agrees.
                here = here && oracle::dist_by_deepening(inst, V) == dist.value;
                ++small;
            }
            ok = ok && here;
            ++instances;
        }
        double s = seconds_since(t0);
        os << instances << " instances, " << positive << " with Dist > 0, up to " << most_configs << " configurations, "
           << small << " checked exhaustively, " << s << " s, budget "
           << kStructureBudgetSeconds << " s";
        return ok && s < kStructureBudgetSeconds;
    });

    criterion(7, "vertex distance examples for sizes (1/2,1/3)", [](std::ostream& os) {
        Instance inst({Rational(1, 2), Rational(1, 3)}, {});
        auto V = hull_vertices(inst);
        auto dist = [&](Point b) { return vertex_distance(inst.with_multiplicities(std::move(b)), V).value; };
        auto a = dist({2, 3}), b = dist({1, 1}), c = dist({5, 5});
        os << "(2,3)->" << a << " (1,1)->" << b << " (5,5)->" << c;
        return a == 0 && b == 1 && c == 2;
    });

    criterion(8, "lower-bound construction d=3, eps=1/37", [](std::ostream& os) {
        auto t0 = Clock::now();
        auto s = construct_sylvester_instance(3, Rational(1, 37));
        bool ok = s.a == std::vector<BigInt>{75, 227, 6751} && s.premises_hold();
        ok = ok && size_of(s.g, s.basis()) == Rational(s.det - 1, s.det);
        auto u = check_uniqueness(s, 5);
        ok = ok && u.unique && u.witness.size() == 4;
        for (const auto& w : u.witness)
            ok = ok && w.size > Rational(1);
        auto c = dist_certificate(s, to_int64(sylvester(3) - 2));
        ok = ok && c.dist == 5;
        double secs = seconds_since(t0);
        os << "a=(" << s.a[0] << "," << s.a[1] << "," << s.a[2] << "), g=" << s.g.str() << ", certificate Dist=" << c.dist
           << ", " << secs << " s";
        return ok && secs < kConstructionBudgetSeconds;
    });

    criterion(9, "searched instance: certified Dist(Kg)=K matches exact solver", [](std::ostream& os) {
        auto s = search_min_instance(3, Rational(1, 37), 100'000);
        if (!s) {
            os << "no instance under the bound";
            return false;
        }
        auto inst = s->instance();
        const auto configs = count_configs(inst);
        bool ok = configs <= 100'000 && s->premises_hold();
        auto V = hull_vertices(inst);
        os << "a=(" << s->a[0] << "," << s->a[1] << "," << s->a[2] << "), " << configs << " configurations, Dist:";
        for (std::int64_t K = 1; K <= 3; ++K) {
            auto c = dist_certificate(*s, K);
            auto r = vertex_distance(inst.with_multiplicities(scaled(s->g.point(), K)), V, K);
            ok = ok && r.value == c.dist;
            os << " " << r.value;
        }
        return ok;
    });

    criterion(10, "ILP/LP against enumeration and IRUP failure", [](std::ostream& os) {
        std::mt19937_64 rng(110);
        int n = 0;
        bool ok = true;
        while (n < 600) {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
            auto inst = random_sizes(rng, d, 9);
            Point b(d, 0);
            const auto items = std::uniform_int_distribution<int>(0, 8)(rng);
            for (int k = 0; k < items; ++k)
                ++b[std::uniform_int_distribution<std::size_t>(0, d - 1)(rng)];
            inst = inst.with_multiplicities(b);
            ok = ok && solve_ilp(inst).bins == oracle::ilp_by_partition(inst);
            ok = ok && solve_lp(inst).value == oracle::lp_by_basic_solutions(inst);
            ++n;
        }
        os << n << " instances with <= 8 items";

        auto s = search_min_instance(3, Rational(1, 37), 100'000);
        auto inst = s->instance();
        auto fam = irup_family(inst, s->g.point(), 1, hull_vertices(inst));
        bool family_ok = fam.complete && fam.members.size() == 1 && fam.members[0].report &&
                         !fam.members[0].report->irup;
        os << "; searched [4g]=" << to_string(fam.members[0].residue) << " " << fam.members[0].status;

        // The large construction: an exact verdict or the resource-limit path.
        auto big = construct_sylvester_instance(3, Rational(1, 37));
        auto big_inst = big.instance();
        Limits lim;
        lim.time_cap = kLargeIrupBudget;
        auto big_fam = irup_family(big_inst, big.g.point(), 1, hull_vertices(big_inst), lim);
        const auto& m = big_fam.members.at(0);
        bool big_ok = m.report ? !m.report->irup : m.status.rfind("resource-limit", 0) == 0;
        os << "; constructed [4g]=" << to_string(m.residue) << " " << m.status;
        if (m.report)
            os << " (ILP " << m.report->ilp_opt << ", LP " << m.report->lp_opt << ")";
        return ok && family_ok && big_ok;
    });

    criterion(11, "Sylvester identities", [](std::ostream& os) {
        bool ok = sylvester(5) == 1807;
        for (std::int64_t j = 1; j <= 10; ++j) {
            Rational sum;
            for (std::int64_t i = 1; i < j; ++i)
                sum += Rational(BigInt(1), sylvester(i));
            ok = ok && sum == Rational(1) - Rational(BigInt(1), sylvester(j) - 1);
        }
        os << "j <= 10, S_5 = " << sylvester(5);
        return ok;
    });

    std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << " in "
              << seconds_since(start) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
