#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/quiver.hpp"

namespace sigq {

// ---- strings -----------------------------------------------------------------

// Exponent notation: "(cadb)^6", "a^3b^4c^5d^6", or plain expanded letters.
inline Word parse_word(const std::string& text) {
    Word w;
    w.closed = true;
    size_t i = 0;
    auto parse_exp = [&]() -> int {
        if (i < text.size() && text[i] == '^') {
            ++i;
            size_t start = i;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
            if (i == start) fail("invalid-spec", "word exponent expects digits after '^'");
            return std::stoi(text.substr(start, i - start));
        }
        return 1;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        if (c == '(') {
            const size_t close = text.find(')', i);
            if (close == std::string::npos) fail("invalid-spec", "unbalanced '(' in word");
            Word inner = parse_word(text.substr(i + 1, close - i - 1));
            i = close + 1;
            const int rep = parse_exp();
            for (int r = 0; r < rep; ++r)
                w.letters.insert(w.letters.end(), inner.letters.begin(), inner.letters.end());
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            ++i;
            const int rep = parse_exp();
            for (int r = 0; r < rep; ++r) w.letters.push_back(c - 'a');
            continue;
        }
        fail("invalid-spec", std::string("unexpected character in word: '") + c + "'");
    }
    return w;
}

namespace detail {

inline std::string run_length(const std::vector<int>& letters) {
    std::string out;
    size_t i = 0;
    while (i < letters.size()) {
        size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        out += (char)('a' + letters[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace detail

struct MinimalSubword {
    Word subword;
    int exponent = 1;
};

// Smallest u and largest m with w = u^m (prefix-function periodicity).
inline MinimalSubword minimal_subword(const Word& w) {
    const size_t n = w.letters.size();
    MinimalSubword out;
    out.subword = w;
    if (n == 0) return out;
    std::vector<size_t> pf(n, 0);
    for (size_t i = 1; i < n; ++i) {
        size_t k = pf[i - 1];
        while (k > 0 && w.letters[i] != w.letters[k]) k = pf[k - 1];
        if (w.letters[i] == w.letters[k]) ++k;
        pf[i] = k;
    }
    const size_t p = n - pf[n - 1];
    if (n % p == 0 && p < n) {
        out.subword.letters.assign(w.letters.begin(), w.letters.begin() + p);
        out.exponent = (int)(n / p);
    }
    return out;
}

inline std::string word_string(const Word& w, bool use_exponents = true) {
    if (w.letters.empty()) return "()";
    if (!use_exponents) {
        std::string s;
        for (int l : w.letters) s += (char)('a' + l);
        return s;
    }
    MinimalSubword ms = minimal_subword(w);
    if (ms.exponent > 1)
        return "(" + detail::run_length(ms.subword.letters) + ")^" + std::to_string(ms.exponent);
    return detail::run_length(w.letters);
}

// ---- path validity -----------------------------------------------------------

inline bool is_valid_path(const SignatureQuiver& q, const Word& w) {
    if (w.letters.empty()) return false;
    for (int l : w.letters)
        if (l < 0 || l >= (int)q.edges.size()) return false;
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (q.edges[w.letters[i]].to_vertex != q.edges[w.letters[i + 1]].from_vertex) return false;
    if (w.closed &&
        q.edges[w.letters.back()].to_vertex != q.edges[w.letters.front()].from_vertex)
        return false;
    return true;
}

inline void require_valid_path(const SignatureQuiver& q, const Word& w) {
    if (!is_valid_path(q, w)) fail("not-a-path", "word is not a valid path on the quiver");
}

// ---- cyclic equivalence --------------------------------------------------------

namespace detail {

// Booth's least-rotation algorithm.
inline size_t least_rotation_index(const std::vector<int>& s) {
    const size_t n = s.size();
    if (n == 0) return 0;
    std::vector<ptrdiff_t> fail_fn(2 * n, -1);
    size_t k = 0;
    for (size_t j = 1; j < 2 * n; ++j) {
        const int sj = s[j % n];
        ptrdiff_t i = fail_fn[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j - i - 1;
            i = fail_fn[i];
        }
        if (sj != s[(k + i + 1) % n]) {
            if (sj < s[k % n]) k = j;
            fail_fn[j - k] = -1;
        } else {
            fail_fn[j - k] = i + 1;
        }
    }
    return k % n;
}

}  // namespace detail

// Lexicographically least rotation of a closed word.
inline Word canonical(const Word& w) {
    if (!w.closed) fail("not-cyclic", "canonical form requires a closed word");
    Word out = w;
    const size_t n = w.letters.size();
    if (n == 0) return out;
    const size_t k = detail::least_rotation_index(w.letters);
    for (size_t i = 0; i < n; ++i) out.letters[i] = w.letters[(k + i) % n];
    return out;
}

inline Word rotated(const Word& w, size_t k) {
    Word out = w;
    const size_t n = w.letters.size();
    for (size_t i = 0; i < n; ++i) out.letters[i] = w.letters[(k + i) % n];
    return out;
}

inline bool rotation_equivalent(const Word& a, const Word& b) {
    if (a.letters.size() != b.letters.size()) return false;
    if (a.letters.empty()) return true;
    return canonical(a).letters == canonical(b).letters;
}

// Equality up to a letter bijection composed with a rotation.
inline bool relabel_rotation_equivalent(const Word& a, const Word& b) {
    const size_t n = a.letters.size();
    if (n != b.letters.size()) return false;
    if (n == 0) return true;
    for (size_t r = 0; r < n; ++r) {
        std::map<int, int> fwd, bwd;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            const int x = a.letters[i];
            const int y = b.letters[(i + r) % n];
            auto f = fwd.find(x);
            auto g = bwd.find(y);
            if (f == fwd.end() && g == bwd.end()) {
                fwd[x] = y;
                bwd[y] = x;
            } else {
                ok = f != fwd.end() && g != bwd.end() && f->second == y && g->second == x;
            }
        }
        if (ok) return true;
    }
    return false;
}

// ---- multiplicities and closure -----------------------------------------------

// Letter frequency per edge id.
inline std::vector<int> multiplicities(const Word& w, int n_edges) {
    std::vector<int> mu(std::max(n_edges, 0), 0);
    for (int l : w.letters) {
        if (l >= (int)mu.size()) mu.resize(l + 1, 0);
        mu[l]++;
    }
    return mu;
}

inline bool compatible(const Word& a, const Word& b, int n_edges) {
    return multiplicities(a, n_edges) == multiplicities(b, n_edges);
}

struct ClosureTestResult {
    bool holds = false;    // sum of mu~ * omega matches 2 pi xi
    double sum = 0.0;      // sum of mu~_i omega_i over the full word
    int m = 1;             // exponent of the minimal repeated subword
    bool gcd_ok = false;   // gcd(|xi|, m) == 1
};

// Closed-curve criterion for a path: sum(mu~_i omega_i) = 2 pi xi.
inline ClosureTestResult closure_test(const SignatureQuiver& q, const Word& w, int xi) {
    require_valid_path(q, w);
    ClosureTestResult out;
    const std::vector<int> mu = multiplicities(w, (int)q.edges.size());
    for (size_t e = 0; e < q.edges.size(); ++e) out.sum += mu[e] * q.edges[e].weight_omega;
    out.holds = std::abs(out.sum - kTwoPi * xi) <= 1e-4;
    out.m = minimal_subword(w).exponent;
    out.gcd_ok = xi != 0 && gcd64(std::abs(xi), out.m) == 1;
    return out;
}

// ---- enumeration ----------------------------------------------------------------

struct EnumerationResult {
    std::vector<Word> words;  // canonical forms, lexicographic order
    bool truncated = false;
    uint64_t nodes = 0;  // backtracking nodes visited
};

// All closed paths with the prescribed edge multiplicities, modulo cyclic
// equivalence. Backtracking with an exact Eulerian-feasibility prune
// (degree balance + connectivity of the remaining multiset).
inline EnumerationResult enumerate_words(const SignatureQuiver& q,
                                         const std::vector<int>& per_period_mult,
                                         size_t max_results = 100000,
                                         uint64_t node_budget = 50'000'000) {
    const int ne = (int)q.edges.size();
    if ((int)per_period_mult.size() != ne)
        fail("invalid-spec", "need one multiplicity per quiver edge");
    for (int c : per_period_mult)
        if (c < 0) fail("invalid-spec", "multiplicities must be non-negative");

    EnumerationResult out;
    int total = 0;
    int first = -1;
    for (int e = 0; e < ne; ++e) {
        total += per_period_mult[e];
        if (first < 0 && per_period_mult[e] > 0) first = e;
    }
    if (total == 0) return out;

    const int nv = (int)q.vertices.size();
    std::vector<int> remaining = per_period_mult;
    std::vector<int> out_deg(nv, 0), in_deg(nv, 0);
    for (int e = 0; e < ne; ++e) {
        out_deg[q.edges[e].from_vertex] += remaining[e];
        in_deg[q.edges[e].to_vertex] += remaining[e];
    }

    const int start_vertex = q.edges[first].from_vertex;
    std::set<std::vector<int>> seen;
    std::vector<int> path;

    // Eulerian-trail feasibility for the remaining multiset from cur to start.
    auto feasible = [&](int cur) {
        for (int v = 0; v < nv; ++v) {
            int expect = 0;
            if (cur != start_vertex) {
                if (v == cur) expect = 1;
                if (v == start_vertex) expect = -1;
            }
            if (out_deg[v] - in_deg[v] != expect) return false;
        }
        // all remaining edges weakly connected with cur
        std::vector<bool> seen_v(nv, false);
        std::vector<int> stack{cur};
        seen_v[cur] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int e = 0; e < ne; ++e) {
                if (remaining[e] == 0) continue;
                if (q.edges[e].from_vertex == v && !seen_v[q.edges[e].to_vertex]) {
                    seen_v[q.edges[e].to_vertex] = true;
                    stack.push_back(q.edges[e].to_vertex);
                } else if (q.edges[e].to_vertex == v && !seen_v[q.edges[e].from_vertex]) {
                    seen_v[q.edges[e].from_vertex] = true;
                    stack.push_back(q.edges[e].from_vertex);
                }
            }
        }
        for (int e = 0; e < ne; ++e)
            if (remaining[e] > 0 &&
                (!seen_v[q.edges[e].from_vertex] || !seen_v[q.edges[e].to_vertex]))
                return false;
        return true;
    };

    auto take = [&](int e) {
        remaining[e]--;
        out_deg[q.edges[e].from_vertex]--;
        in_deg[q.edges[e].to_vertex]--;
        path.push_back(e);
    };
    auto untake = [&](int e) {
        remaining[e]++;
        out_deg[q.edges[e].from_vertex]++;
        in_deg[q.edges[e].to_vertex]++;
        path.pop_back();
    };

    std::function<void(int)> recur = [&](int cur) {
        if (out.truncated) return;
        if (++out.nodes > node_budget) {
            out.truncated = true;
            return;
        }
        if ((int)path.size() == total) {
            if (cur == start_vertex) {
                Word w;
                w.closed = true;
                w.letters = path;
                Word c = canonical(w);
                if (seen.insert(c.letters).second) {
                    if (out.words.size() >= max_results) {
                        out.truncated = true;
                        return;
                    }
                    out.words.push_back(std::move(c));
                }
            }
            return;
        }
        for (int e = 0; e < ne && !out.truncated; ++e) {
            if (remaining[e] == 0 || q.edges[e].from_vertex != cur) continue;
            take(e);
            if (feasible(q.edges[e].to_vertex)) recur(q.edges[e].to_vertex);
            untake(e);
        }
    };

    take(first);
    if (feasible(q.edges[first].to_vertex)) recur(q.edges[first].to_vertex);
    untake(first);

    std::sort(out.words.begin(), out.words.end(),
              [](const Word& a, const Word& b) { return a.letters < b.letters; });
    return out;
}

// Memoized count of closed edge sequences (not cyclic classes) that start
// with the smallest used edge. When that edge has multiplicity 1 the count
// equals the number of cyclic classes.
inline uint64_t count_closed_sequences(const SignatureQuiver& q,
                                       const std::vector<int>& per_period_mult) {
    const int ne = (int)q.edges.size();
    if ((int)per_period_mult.size() != ne)
        fail("invalid-spec", "need one multiplicity per quiver edge");
    int first = -1;
    for (int e = 0; e < ne; ++e)
        if (per_period_mult[e] > 0) {
            first = e;
            break;
        }
    if (first < 0) return 0;

    std::vector<int> remaining = per_period_mult;
    remaining[first]--;
    const int start_vertex = q.edges[first].from_vertex;

    std::unordered_map<std::string, uint64_t> memo;
    std::function<uint64_t(int)> count = [&](int cur) -> uint64_t {
        bool done = true;
        for (int e = 0; e < ne; ++e)
            if (remaining[e] > 0) done = false;
        if (done) return cur == start_vertex ? 1 : 0;
        std::string key(remaining.size() + 1, '\0');
        for (size_t i = 0; i < remaining.size(); ++i) key[i] = (char)remaining[i];
        key.back() = (char)cur;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        uint64_t acc = 0;
        for (int e = 0; e < ne; ++e) {
            if (remaining[e] == 0 || q.edges[e].from_vertex != cur) continue;
            remaining[e]--;
            acc += count(q.edges[e].to_vertex);
            remaining[e]++;
        }
        memo[key] = acc;
        return acc;
    };
    return count(q.edges[first].to_vertex);
}

}  // namespace sigq
