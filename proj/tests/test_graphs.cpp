#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "qrmt/graphs.hpp"
#include "qrmt/mp_law.hpp"

using namespace qrmt;

namespace {

// Brute-force oracle: enumerate ALL index sequences (i_1..i_k, j_1..j_k)
// over k+1 labels per side, relabel each by order of first appearance to its
// canonical form, and deduplicate. Independent of enumerate_canonical.
std::set<std::pair<std::vector<int>, std::vector<int>>> canonical_forms_bruteforce(int k) {
    const int labels = k + 1;
    std::set<std::pair<std::vector<int>, std::vector<int>>> forms;
    std::vector<int> iv(static_cast<std::size_t>(k)), jv(static_cast<std::size_t>(k));
    const auto canonicalize = [](const std::vector<int>& seq) {
        std::map<int, int> remap;
        std::vector<int> out;
        out.reserve(seq.size());
        for (const int v : seq) {
            if (!remap.count(v)) remap[v] = static_cast<int>(remap.size()) + 1;
            out.push_back(remap[v]);
        }
        return out;
    };
    const auto rec = [&](auto&& self, int pos) -> void {
        if (pos == 2 * k) {
            auto fi = canonicalize(iv);
            fi.push_back(fi.front());  // f(k+1) = f(1) = 1 after relabeling
            forms.insert({fi, canonicalize(jv)});
            return;
        }
        // interleave choices i_1, j_1, i_2, j_2, ... to keep the recursion flat
        std::vector<int>& target = (pos % 2 == 0) ? iv : jv;
        for (int v = 1; v <= labels; ++v) {
            target[static_cast<std::size_t>(pos / 2)] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return forms;
}

std::map<EdgeType, int> label_counts(const CanonicalGraph& g) {
    std::map<EdgeType, int> counts;
    for (const auto t : classify_edges(g)) ++counts[t];
    return counts;
}

}  // namespace

TEST_SUITE("canonical graphs") {
    TEST_CASE("k=1: the single forced graph") {
        const auto graphs = enumerate_canonical(1);
        REQUIRE(graphs.size() == 1);
        CHECK(graphs[0].f == std::vector<int>{1, 1});
        CHECK(graphs[0].g == std::vector<int>{1});
        CHECK(graphs[0].r() == 0);
        CHECK(graphs[0].s() == 1);
    }

    TEST_CASE("enumeration count matches the brute-force canonicalization") {
        for (int k = 1; k <= 3; ++k) {
            const auto graphs = enumerate_canonical(k);
            const auto forms = canonical_forms_bruteforce(k);
            CHECK(graphs.size() == forms.size());
            // and each enumerated graph is one of the canonical forms
            for (const auto& g : graphs) CHECK(forms.count({g.f, g.g}) == 1);
        }
    }

    TEST_CASE("every output satisfies the growth constraints") {
        for (int k = 1; k <= 4; ++k) {
            for (const auto& g : enumerate_canonical(k)) {
                CHECK(g.f.front() == 1);
                CHECK(g.f.back() == 1);
                CHECK(g.g.front() == 1);
                int fmax = 0;
                for (const int v : g.f) {
                    CHECK(v <= fmax + 1);
                    fmax = std::max(fmax, v);
                }
                int gmax = 0;
                for (const int v : g.g) {
                    CHECK(v <= gmax + 1);
                    gmax = std::max(gmax, v);
                }
            }
        }
    }

    TEST_CASE("guard on k") {
        CHECK_THROWS_AS(enumerate_canonical(0), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_canonical(6), std::invalid_argument);
    }
}

TEST_SUITE("edge classification") {
    TEST_CASE("k=1: down innovation followed by an irregular T3") {
        const auto graphs = enumerate_canonical(1);
        const auto labels = classify_edges(graphs[0]);
        REQUIRE(labels.size() == 2);
        CHECK(labels[0] == EdgeType::T1Down);
        CHECK(labels[1] == EdgeType::T3Irregular);
    }

    TEST_CASE("label partition #T1 + #T3 + #T4 = 2k") {
        for (int k = 1; k <= 4; ++k) {
            for (const auto& g : enumerate_canonical(k)) {
                const auto counts = label_counts(g);
                int total = 0;
                for (const auto& [t, c] : counts) total += c;
                CHECK(total == 2 * k);
            }
        }
    }

    TEST_CASE("single-edge graphs are flagged as zero-contribution") {
        // f=(1,2,1), g=(1,2): edges (1,1),(1,2),(2,2),(2,1) - all multiplicity
        // one, so the graph carries a single edge.
        CanonicalGraph g;
        g.k = 2;
        g.f = {1, 2, 1};
        g.g = {1, 2};
        CHECK(has_single_edge(g));

        // f=(1,1,1), g=(1,1): both pairs repeat, no single edge.
        CanonicalGraph h;
        h.k = 2;
        h.f = {1, 1, 1};
        h.g = {1, 1};
        CHECK(!has_single_edge(h));
    }

    TEST_CASE("classification is invariant under canonical relabeling") {
        // Relabeling a non-canonical sequence to canonical form and
        // classifying matches the canonical graph's labels: the classifier
        // only consults coincidence structure and first appearances.
        CanonicalGraph g;
        g.k = 3;
        g.f = {1, 2, 1, 1};
        g.g = {1, 1, 2};
        const auto direct = classify_edges(g);

        // relabel I-vertices 1->3, 2->7 and J 1->5, 2->2, then canonicalize
        std::vector<int> iv{3, 7, 3}, jv{5, 5, 2};
        std::map<int, int> ri, rj;
        std::vector<int> fc, gc;
        for (const int v : iv) {
            if (!ri.count(v)) ri[v] = static_cast<int>(ri.size()) + 1;
            fc.push_back(ri[v]);
        }
        fc.push_back(fc.front());
        for (const int v : jv) {
            if (!rj.count(v)) rj[v] = static_cast<int>(rj.size()) + 1;
            gc.push_back(rj[v]);
        }
        CanonicalGraph back;
        back.k = 3;
        back.f = fc;
        back.g = gc;
        CHECK(classify_edges(back) == direct);
    }
}

TEST_SUITE("chain lemmas") {
    TEST_CASE("exhaustive verification finds no counterexamples for k <= 3") {
        for (int k = 1; k <= 3; ++k) {
            const auto report = verify_chain_lemmas(k);
            CHECK(report.ok());
            CHECK(report.graphs_checked > 0);
            CHECK(report.prefixes_checked == report.graphs_checked * 2 * k);
        }
    }

    TEST_CASE("graphs without T2 edges have no regular T3 edges") {
        for (int k = 1; k <= 4; ++k) {
            for (const auto& g : enumerate_canonical(k)) {
                const auto counts = label_counts(g);
                const auto t2 = counts.count(EdgeType::T2) ? counts.at(EdgeType::T2) : 0;
                const auto reg =
                    counts.count(EdgeType::T3Regular) ? counts.at(EdgeType::T3Regular) : 0;
                if (t2 == 0) CHECK(reg == 0);
            }
        }
    }

    TEST_CASE("guard on k") {
        CHECK_THROWS_AS(verify_chain_lemmas(0), std::invalid_argument);
        CHECK_THROWS_AS(verify_chain_lemmas(5), std::invalid_argument);
    }
}

TEST_SUITE("leading moment counts") {
    TEST_CASE("rows for k = 2, 3, 4") {
        const auto c2 = leading_moment_counts(2);
        REQUIRE(c2.size() == 2);
        CHECK(c2.at(1) == 1);
        CHECK(c2.at(2) == 1);

        const auto c3 = leading_moment_counts(3);
        REQUIRE(c3.size() == 3);
        CHECK(c3.at(1) == 1);
        CHECK(c3.at(2) == 3);
        CHECK(c3.at(3) == 1);

        const auto c4 = leading_moment_counts(4);
        REQUIRE(c4.size() == 4);
        CHECK(c4.at(1) == 1);
        CHECK(c4.at(2) == 6);
        CHECK(c4.at(3) == 6);
        CHECK(c4.at(4) == 1);
    }

    TEST_CASE("row sums are Catalan numbers") {
        const long long catalan[] = {1, 2, 5, 14, 42};
        for (int k = 1; k <= 5; ++k) {
            long long sum = 0;
            for (const auto& [s, c] : leading_moment_counts(k)) sum += c;
            CHECK(sum == catalan[k - 1]);
        }
    }

    TEST_CASE("counts equal the y-coefficients of the law moments") {
        // moment(k)/sigma^(2k) = sum_s count[s] y^(s-1): compare the two
        // polynomials by evaluation at several y.
        for (int k = 1; k <= 5; ++k) {
            const auto counts = leading_moment_counts(k);
            for (const double y : {0.3, 0.7, 1.0, 1.9}) {
                double poly = 0.0;
                for (const auto& [s, c] : counts)
                    poly += static_cast<double>(c) * std::pow(y, s - 1);
                const double want = MPLaw(y, 1.0).moment(static_cast<std::size_t>(k));
                CHECK(poly == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}
