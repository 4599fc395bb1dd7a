#include "egfp/pencils.hpp"

#include "egfp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace egfp {

DecorationAssignment DecorationAssignment::make_named(std::vector<std::string> ns,
                                                      std::vector<Eigen::MatrixXcd> vs) {
    DecorationAssignment d;
    d.trivial = false;
    d.names = std::move(ns);
    d.values = std::move(vs);
    return d;
}

MatrixAssignment DecorationAssignment::materialize(const IndexTuple& tuple,
                                                   const MatrixPolynomial& p) const {
    if (trivial) return MatrixAssignment::make_trivial(tuple, p);
    if (names.size() != tuple.size() || values.size() != tuple.size())
        throw std::invalid_argument("assignment length does not match the tuple");
    MatrixAssignment trivial_part = MatrixAssignment::make_trivial(tuple, p);
    MatrixAssignment a;
    a.tuple = tuple;
    a.trivial = false;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (names[k].empty()) {
            a.mats.push_back(trivial_part.mats[k]);
            a.tags.push_back(trivial_part.tags[k]);
        } else {
            a.mats.push_back(values[k]);
            a.tags.push_back(Tag::assigned(names[k]));
        }
    }
    return a;
}

namespace {

bool values_subset(const IndexTuple& part, const IndexTuple& whole,
                   const std::vector<SignedIndex>& excluded) {
    for (const auto& t : part) {
        if (std::find(excluded.begin(), excluded.end(), t) != excluded.end()) return false;
        if (!whole.contains(t)) return false;
    }
    return true;
}

void check_assignment_shape(const DecorationAssignment& d, const IndexTuple& tuple,
                            const char* who, std::vector<std::string>& violations) {
    if (d.trivial) return;
    if (d.names.size() != tuple.size() || d.values.size() != tuple.size())
        violations.push_back(std::string(who) + ": assignment length does not match the tuple");
}

} // namespace

ValidationReport validate(const EgfpSpec& spec) {
    ValidationReport r;
    auto fail = [&](const std::string& msg) {
        r.valid = false;
        r.violations.push_back(msg);
    };

    const int m = spec.m;
    if (m < 2) fail("degree m must be at least 2");

    if (!spec.sigma.all_plus()) fail("sigma must contain nonnegative indices");
    if (!spec.tau.all_minus()) fail("tau must contain nonpositive indices");
    if (!spec.sigma1.all_plus() || !spec.sigma2.all_plus())
        fail("sigma_1, sigma_2 must contain nonnegative indices");
    if (!spec.tau1.all_minus() || !spec.tau2.all_minus())
        fail("tau_1, tau_2 must contain nonpositive indices");

    // (sigma, -tau) is a permutation of {0:m}
    {
        std::vector<int> count(std::max(0, m + 1), 0);
        bool range_ok = true;
        auto add = [&](int mag) {
            if (mag < 0 || mag > m) {
                range_ok = false;
                return;
            }
            ++count[mag];
        };
        for (const auto& t : spec.sigma) add(t.magnitude);
        for (const auto& t : spec.tau) add(t.magnitude);
        if (!range_ok)
            fail("(sigma, -tau) contains an index outside {0:m}");
        else if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; }))
            fail("(sigma, -tau) is not a permutation of {0:m}");
    }

    if (!values_subset(spec.sigma1, spec.sigma, {pos(m - 1), pos(m)}))
        fail("sigma_1 must take indices from sigma minus {m-1, m}");
    if (!values_subset(spec.sigma2, spec.sigma, {pos(m - 1), pos(m)}))
        fail("sigma_2 must take indices from sigma minus {m-1, m}");
    if (!values_subset(spec.tau1, spec.tau, {neg(1), neg(0)}))
        fail("tau_1 must take indices from tau minus {-1, -0}");
    if (!values_subset(spec.tau2, spec.tau, {neg(1), neg(0)}))
        fail("tau_2 must take indices from tau minus {-1, -0}");

    if (spec.sigma_composite().single_class() && !satisfies_sip(spec.sigma_composite()))
        fail("(sigma_1, sigma, sigma_2) violates the SIP");
    if (spec.tau_composite().single_class() && !satisfies_sip(spec.tau_composite()))
        fail("(tau_1, tau, tau_2) violates the SIP");

    check_assignment_shape(spec.x1, spec.sigma1, "X1", r.violations);
    check_assignment_shape(spec.x2, spec.sigma2, "X2", r.violations);
    check_assignment_shape(spec.y1, spec.tau1, "Y1", r.violations);
    check_assignment_shape(spec.y2, spec.tau2, "Y2", r.violations);

    // nonsingularity of explicit assignments: only the 0- and m-magnitude
    // positions must invert, the other elementary factors always do
    auto check_values = [&](const DecorationAssignment& d, const IndexTuple& tuple,
                            const char* who) {
        if (d.trivial || d.values.size() != tuple.size() || d.names.size() != tuple.size())
            return;
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            if (d.names[k].empty()) continue; // trivial position, value comes from P
            int mag = tuple[k].magnitude;
            if (mag != 0 && mag != m) continue;
            if (!d.values[k].fullPivLu().isInvertible())
                fail(std::string(who) + ": singular matrix assigned to index " +
                     tuple[k].str());
        }
    };
    check_values(spec.x1, spec.sigma1, "X1");
    check_values(spec.x2, spec.sigma2, "X2");
    check_values(spec.y1, spec.tau1, "Y1");
    check_values(spec.y2, spec.tau2, "Y2");

    r.valid = r.violations.empty();
    r.operation_free_predicted = operation_free_hypothesis(spec);

    // inverses the assembly will need
    if (spec.tau.contains(neg(0))) r.required_invertible.push_back("A_0");
    if (spec.sigma.contains(pos(m))) r.required_invertible.push_back("A_" + std::to_string(m));
    auto trivial_needs = [&](const DecorationAssignment& d, const IndexTuple& tuple) {
        if (!d.trivial) return;
        for (const auto& t : tuple)
            if (t.magnitude == 0 || t.magnitude == m)
                r.required_invertible.push_back("A_" + std::to_string(t.magnitude));
    };
    trivial_needs(spec.x1, spec.sigma1);
    trivial_needs(spec.x2, spec.sigma2);
    trivial_needs(spec.y1, spec.tau1);
    trivial_needs(spec.y2, spec.tau2);

    return r;
}

Eigen::MatrixXcd BlockPencil::eval(std::complex<double> lambda) const {
    return lambda * L1.dense() - L0.dense();
}

std::map<std::string, Eigen::MatrixXcd> BlockPencil::named() const {
    std::map<std::string, Eigen::MatrixXcd> out;
    if (!spec) return out;
    auto collect = [&](const DecorationAssignment& d) {
        if (d.trivial) return;
        for (std::size_t k = 0; k < d.names.size(); ++k)
            if (!d.names[k].empty()) out[d.names[k]] = d.values[k];
    };
    collect(spec->x1);
    collect(spec->x2);
    collect(spec->y1);
    collect(spec->y2);
    return out;
}

BlockPencil build(const EgfpSpec& spec, const MatrixPolynomial& p, const BuildOptions& opts) {
    ValidationReport v = validate(spec);
    if (!v.valid) {
        std::ostringstream os;
        os << "invalid spec:";
        for (const auto& s : v.violations) os << " [" << s << "]";
        throw std::invalid_argument(os.str());
    }
    if (p.m != spec.m) throw std::invalid_argument("polynomial degree does not match the spec");

    const int m = spec.m, n = p.n;
    MatrixAssignment x1 = spec.x1.materialize(spec.sigma1, p);
    MatrixAssignment x2 = spec.x2.materialize(spec.sigma2, p);
    MatrixAssignment y1 = spec.y1.materialize(spec.tau1, p);
    MatrixAssignment y2 = spec.y2.materialize(spec.tau2, p);

    BlockMatrix left = opts.swapped_decorations
                           ? assignment_product(x1, m, n) * assignment_product(y1, m, n)
                           : assignment_product(y1, m, n) * assignment_product(x1, m, n);
    BlockMatrix right = opts.swapped_decorations
                            ? assignment_product(y2, m, n) * assignment_product(x2, m, n)
                            : assignment_product(x2, m, n) * assignment_product(y2, m, n);

    BlockMatrix core1 = fiedler_product(spec.tau, p);
    BlockMatrix core0 = fiedler_product(spec.sigma, p);

    BlockPencil out;
    out.L1 = left * core1 * right;
    out.L0 = left * core0 * right;
    out.spec = spec;
    out.m = m;
    out.n = n;
    return out;
}

std::set<Family> classify(const EgfpSpec& spec) {
    std::set<Family> fams;
    const int m = spec.m;
    bool decorations_empty = spec.sigma1.empty() && spec.sigma2.empty() && spec.tau1.empty() &&
                             spec.tau2.empty();
    bool decorations_trivial = spec.x1.trivial && spec.x2.trivial && spec.y1.trivial &&
                               spec.y2.trivial;

    auto is_perm_of_range = [](const IndexTuple& t, int lo, int hi, bool minus) {
        if (static_cast<int>(t.size()) != hi - lo + 1) return false;
        for (int v = lo; v <= hi; ++v)
            if (!t.contains(minus ? neg(v) : pos(v))) return false;
        return true;
    };

    if (decorations_empty) {
        fams.insert(Family::GFP);
        if (is_perm_of_range(spec.sigma, 0, m - 1, false) && spec.tau == IndexTuple{neg(m)})
            fams.insert(Family::FP);
    }
    // sigma a permutation of {0:h}, tau of {-m:-(h+1)}
    for (int h = 0; h <= m - 1; ++h) {
        if (is_perm_of_range(spec.sigma, 0, h, false) &&
            is_perm_of_range(spec.tau, h + 1, m, true)) {
            fams.insert(Family::GFPR);
            if (decorations_trivial) fams.insert(Family::FPR);
        }
    }
    if (fams.empty()) fams.insert(Family::EGFP_proper);
    return fams;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::FP: return "FP";
        case Family::GFP: return "GFP";
        case Family::FPR: return "FPR";
        case Family::GFPR: return "GFPR";
        case Family::EGFP_proper: return "EGFP";
    }
    return "?";
}

int bandwidth(const BlockPencil& pencil) {
    return std::max(pencil.L0.bandwidth(), pencil.L1.bandwidth());
}

std::string band_class_name(BandClass c) {
    switch (c) {
        case BandClass::tridiagonal: return "tridiagonal";
        case BandClass::pentadiagonal: return "pentadiagonal";
        case BandClass::wider: return "wider";
        case BandClass::not_applicable: return "not-applicable";
    }
    return "?";
}

bool end_index_hypothesis(const EgfpSpec& spec) {
    const int m = spec.m;
    auto ends_sigma = end_indices(spec.sigma, m);
    auto ends_tau = end_indices(spec.tau, m);
    auto touches = [](const IndexTuple& t, const std::vector<SignedIndex>& ends) {
        return std::any_of(t.begin(), t.end(), [&](const SignedIndex& v) {
            return std::find(ends.begin(), ends.end(), v) != ends.end();
        });
    };
    return !touches(spec.sigma1, ends_sigma) && !touches(spec.sigma2, ends_sigma) &&
           !touches(spec.tau1, ends_tau) && !touches(spec.tau2, ends_tau);
}

namespace {

/// Drops the 0- and m-magnitude entries: their elementary matrices are block
/// diagonal, so runs that only continue through them never widen the band.
IndexTuple drop_diagonal_indices(const IndexTuple& t, int m) {
    std::vector<SignedIndex> e;
    for (const auto& v : t)
        if (v.magnitude != 0 && v.magnitude != m) e.push_back(v);
    return IndexTuple(std::move(e));
}

/// Largest consecution/inversion count over interior indices 1..m-1 of both
/// composite tuples (-1 when an index is absent).
int max_run(const EgfpSpec& spec) {
    IndexTuple sc = drop_diagonal_indices(spec.sigma_composite(), spec.m);
    IndexTuple tc = drop_diagonal_indices(spec.tau_composite(), spec.m);
    int worst = -1;
    for (int t = 1; t <= spec.m - 1; ++t) {
        worst = std::max({worst, consecutions(sc, pos(t)), inversions(sc, pos(t)),
                          consecutions(tc, neg(t)), inversions(tc, neg(t))});
    }
    return worst;
}

} // namespace

BandClass predict_bandwidth(const EgfpSpec& spec) {
    int worst = max_run(spec);
    if (worst <= 0) return BandClass::tridiagonal;
    if (!end_index_hypothesis(spec)) return BandClass::not_applicable;
    return worst <= 1 ? BandClass::pentadiagonal : BandClass::wider;
}

bool is_operation_free(const BlockPencil& pencil) {
    const BlockMatrix* mats[2] = {&pencil.L0, &pencil.L1};
    for (const BlockMatrix* mat : mats)
        for (int i = 0; i < mat->mblocks(); ++i)
            for (int j = 0; j < mat->mblocks(); ++j)
                if (!mat->tag(i, j).is_operation_free()) return false;
    return true;
}

bool operation_free_hypothesis(const EgfpSpec& spec) {
    const int m = spec.m;
    bool sigma_bad = spec.sigma.contains(pos(m - 1)) && spec.sigma.contains(pos(m));
    bool tau_bad = spec.tau.contains(neg(1)) && spec.tau.contains(neg(0));
    return !sigma_bad && !tau_bad;
}

namespace {

EgfpSpec base_spec(int m, IndexTuple sigma, IndexTuple tau) {
    EgfpSpec s;
    s.m = m;
    s.sigma = std::move(sigma);
    s.tau = std::move(tau);
    return s;
}

/// Tuple data behind the m = 8 symmetric penta-diagonal template:
///   M_0(X) (lambda M^P_{(-3,-6,-5,-8,-7)} - M^P_{(4,1,2,0)})
///        M^P_1 M_0(X) M^P_{(-6,-8)}.
/// Needs X and A_8 invertible; symmetric for symmetric P and X.
EgfpSpec m8_symmetric_spec(const Eigen::MatrixXcd& xv) {
    const int n = static_cast<int>(xv.rows());
    EgfpSpec s = base_spec(8, IndexTuple::of({4, 1, 2, 0}),
                           IndexTuple::of({-3, -6, -5, -8, -7}));
    s.sigma1 = IndexTuple{pos(0)};
    s.x1 = DecorationAssignment::make_named({"X"}, {xv});
    s.sigma2 = IndexTuple{pos(1), pos(0)};
    s.x2 = DecorationAssignment::make_named({"", "X"},
                                            {Eigen::MatrixXcd::Zero(n, n), xv});
    s.tau2 = IndexTuple{neg(6), neg(8)};
    return s;
}

StructuredPencil from_display(int m, int n, const std::vector<std::vector<const char*>>& l1,
                              const std::vector<std::vector<const char*>>& l0,
                              const MatrixPolynomial& p,
                              const std::map<std::string, Eigen::MatrixXcd>& named) {
    BlockPencil out;
    out.m = m;
    out.n = n;
    out.L1 = BlockMatrix(m, n);
    out.L0 = BlockMatrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Tag t1 = Tag::parse(l1[i][j]);
            Tag t0 = Tag::parse(l0[i][j]);
            out.L1.set_block(i, j, t1.evaluate(p.coeffs, named, n), t1);
            out.L0.set_block(i, j, t0.evaluate(p.coeffs, named, n), t0);
        }
    return StructuredPencil{std::move(out), {}};
}

} // namespace

StructuredPencil structured_generator(StructureKind kind, int m, const MatrixPolynomial& p,
                                      const std::optional<Eigen::MatrixXcd>& x) {
    const int n = p.n;

    if (kind == StructureKind::symmetric && m == 6) {
        // (lambda M^P_{(-6,-3,-2,-4,-0)} - M^P_{(1,5)}) M^P_{-3}; needs A_0 invertible
        EgfpSpec s = base_spec(6, IndexTuple::of({1, 5}),
                               IndexTuple{neg(6), neg(3), neg(2), neg(4), neg(0)});
        s.tau2 = IndexTuple{neg(3)};
        return StructuredPencil{build(s, p), {}};
    }

    if (kind == StructureKind::symmetric && m == 8) {
        // Block penta-diagonal symmetric form with a free coupling matrix X;
        // L is symmetric whenever P and X are.
        Eigen::MatrixXcd xv = x.value_or(Eigen::MatrixXcd::Identity(n, n));
        return StructuredPencil{build(m8_symmetric_spec(xv), p), {}};
    }

    if ((kind == StructureKind::t_even || kind == StructureKind::t_odd ||
         kind == StructureKind::skew) &&
        m == 5) {
        // (lambda M^P_{(-5,-1)} - M^P_{(3,4,2,0)}) M^P_3 with a diagonal sign flip
        EgfpSpec s = base_spec(5, IndexTuple::of({3, 4, 2, 0}), IndexTuple::of({-5, -1}));
        s.sigma2 = IndexTuple{pos(3)};
        StructuredPencil out{build(s, p), {}};
        switch (kind) {
            case StructureKind::t_even: out.q_signs = {1, -1, 1, -1, 1}; break;
            case StructureKind::t_odd: out.q_signs = {1, -1, -1, 1, 1}; break;
            default: out.q_signs = {1, 1, -1, -1, 1}; break;
        }
        for (int i = 0; i < m; ++i)
            if (out.q_signs[i] < 0) {
                out.pencil.L0.negate_block_row(i);
                out.pencil.L1.negate_block_row(i);
            }
        return out;
    }

    if (kind == StructureKind::t_palindromic && m == 7) {
        // Anti-penta-diagonal palindromic template, stored as its block layout
        // (rev L(lambda)^T = L(lambda) when A_i^T = A_{7-i}).
        static const std::vector<std::vector<const char*>> l1 = {
            {"0", "0", "0", "0", "0", "-I", "0"},
            {"0", "0", "0", "0", "0", "-A1", "-A0"},
            {"0", "0", "0", "I", "A3", "0", "0"},
            {"0", "0", "0", "0", "-I", "0", "0"},
            {"I", "A6", "A5", "0", "0", "0", "0"},
            {"0", "A7", "A6", "0", "0", "0", "0"},
            {"0", "0", "A7", "0", "0", "0", "0"}};
        // L0 = -(constant part)
        static const std::vector<std::vector<const char*>> l0 = {
            {"0", "0", "0", "0", "-I", "0", "0"},
            {"0", "0", "0", "0", "-A1", "-A0", "0"},
            {"0", "0", "0", "0", "-A2", "-A1", "-A0"},
            {"0", "0", "-I", "0", "0", "0", "0"},
            {"0", "0", "-A4", "I", "0", "0", "0"},
            {"I", "A6", "0", "0", "0", "0", "0"},
            {"0", "A7", "0", "0", "0", "0", "0"}};
        return from_display(7, n, l1, l0, p, {});
    }

    throw UnsupportedTemplateError("no template for kind/degree " + std::to_string(m));
}

void enumerate_specs(int m, const EnumerationFilter& filter,
                     const std::function<bool(const EgfpSpec&)>& visit, int decoration_cap) {
    if (m < 2) throw std::invalid_argument("enumerate_specs: m must be >= 2");

    // Ordered partitions of {0:m} into (sigma, omega): subsets by bitmask,
    // then lexicographic permutations of each side.
    const int nvals = m + 1;
    for (unsigned mask = 0; mask < (1u << nvals); ++mask) {
        std::vector<int> svals, wvals;
        for (int v = 0; v < nvals; ++v)
            ((mask >> v) & 1u ? svals : wvals).push_back(v);

        std::vector<int> sperm = svals;
        std::sort(sperm.begin(), sperm.end());
        do {
            std::vector<int> wperm = wvals;
            std::sort(wperm.begin(), wperm.end());
            do {
                IndexTuple sigma = IndexTuple::of(sperm);
                std::vector<SignedIndex> taue;
                for (int v : wperm) taue.push_back(neg(v));
                IndexTuple tau{taue};

                // decoration value pools
                std::vector<SignedIndex> spool, tpool;
                for (int v : sperm)
                    if (v != m - 1 && v != m) spool.push_back(pos(v));
                for (int v : wperm)
                    if (v != 0 && v != 1) tpool.push_back(neg(v));

                auto tuples_from = [&](const std::vector<SignedIndex>& pool) {
                    std::vector<IndexTuple> out{IndexTuple{}};
                    std::vector<IndexTuple> prev{IndexTuple{}};
                    for (int len = 1; len <= decoration_cap; ++len) {
                        std::vector<IndexTuple> next;
                        for (const auto& base : prev)
                            for (const auto& v : pool)
                                next.push_back(base.concat(IndexTuple{v}));
                        out.insert(out.end(), next.begin(), next.end());
                        prev = std::move(next);
                    }
                    return out;
                };
                const auto sdecos = tuples_from(spool);
                const auto tdecos = tuples_from(tpool);

                for (const auto& s1 : sdecos) {
                    if (!satisfies_sip(concat(s1, sigma)))
                        continue; // no s2 can repair a violation on the left
                    for (const auto& s2 : sdecos) {
                        if (!satisfies_sip(concat(s1, sigma, s2))) continue;
                        for (const auto& t1 : tdecos) {
                            if (!satisfies_sip(concat(t1, tau))) continue;
                            for (const auto& t2 : tdecos) {
                                if (!satisfies_sip(concat(t1, tau, t2))) continue;
                                EgfpSpec spec = base_spec(m, sigma, tau);
                                spec.sigma1 = s1;
                                spec.sigma2 = s2;
                                spec.tau1 = t1;
                                spec.tau2 = t2;
                                if (filter.band) {
                                    BandClass got = predict_bandwidth(spec);
                                    // band classes nest: a tridiagonal pencil
                                    // passes the penta-diagonal filter too
                                    bool pass = got == *filter.band ||
                                                (*filter.band == BandClass::pentadiagonal &&
                                                 got == BandClass::tridiagonal);
                                    if (!pass) continue;
                                }
                                if (filter.family &&
                                    classify(spec).count(*filter.family) == 0)
                                    continue;
                                if (filter.operation_free &&
                                    operation_free_hypothesis(spec) != *filter.operation_free)
                                    continue;
                                if (!visit(spec)) return;
                            }
                        }
                    }
                }
            } while (std::next_permutation(wperm.begin(), wperm.end()));
        } while (std::next_permutation(sperm.begin(), sperm.end()));
    }
}

EgfpSpec with_random_decorations(EgfpSpec spec, std::mt19937_64& rng, int n, bool integer) {
    int counter = 0;
    auto draw = [&] {
        Eigen::MatrixXcd a(n, n);
        std::uniform_int_distribution<int> di(-4, 4);
        std::normal_distribution<double> dn(0.0, 1.0);
        for (;;) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a(i, j) = integer ? std::complex<double>(di(rng), 0.0)
                                      : std::complex<double>(dn(rng), dn(rng));
            if (a.fullPivLu().isInvertible()) return a;
        }
    };
    auto assign = [&](const IndexTuple& t, DecorationAssignment& d) {
        if (t.empty()) return;
        std::vector<std::string> names;
        std::vector<Eigen::MatrixXcd> values;
        for (std::size_t k = 0; k < t.size(); ++k) {
            names.push_back("D" + std::to_string(counter++));
            values.push_back(draw());
        }
        d = DecorationAssignment::make_named(std::move(names), std::move(values));
    };
    assign(spec.sigma1, spec.x1);
    assign(spec.sigma2, spec.x2);
    assign(spec.tau1, spec.y1);
    assign(spec.tau2, spec.y2);
    return spec;
}

std::vector<EgfpSpec> enumerate_specs(int m, const EnumerationFilter& filter,
                                      int decoration_cap) {
    std::vector<EgfpSpec> out;
    enumerate_specs(
        m, filter,
        [&](const EgfpSpec& s) {
            out.push_back(s);
            return true;
        },
        decoration_cap);
    return out;
}

} // namespace egfp
