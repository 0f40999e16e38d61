#include "brute_frames.hpp"

#include <stdexcept>

namespace pearl::testing {

namespace {

bool leq(const PlainFrame& f, unsigned u, unsigned v) {
    for (unsigned o : f.normal)
        if (f.rel.count({o, u, v})) return true;
    return false;
}

}  // namespace

bool plain_frame_ok(const PlainFrame& f) {
    const unsigned n = f.n;
    for (unsigned x = 0; x < n; ++x)
        if (!leq(f, x, x)) return false;
    for (unsigned x = 0; x < n; ++x) {
        for (unsigned y = 0; y < n; ++y) {
            if (!leq(f, x, y)) continue;
            if (f.normal.count(x) && !f.normal.count(y)) return false;
            if (!leq(f, f.star[y], f.star[x])) return false;
            for (unsigned u = 0; u < n; ++u) {
                for (unsigned v = 0; v < n; ++v) {
                    if (f.rel.count({y, u, v}) && !f.rel.count({x, u, v})) return false;
                    if (f.rel.count({u, y, v}) && !f.rel.count({u, x, v})) return false;
                    if (f.rel.count({u, v, x}) && !f.rel.count({u, v, y})) return false;
                }
            }
        }
    }
    return true;
}

std::vector<PlainFrame> brute_frames(unsigned n) {
    if (n == 0 || n > 2) throw std::invalid_argument("brute_frames supports one or two worlds");
    const unsigned triples = n * n * n;
    unsigned stars = 1;
    for (unsigned k = 0; k < n; ++k) stars *= n;
    std::vector<PlainFrame> out;
    for (unsigned o = 0; o < (1u << n); ++o) {
        for (unsigned r = 0; r < (1u << triples); ++r) {
            for (unsigned s = 0; s < stars; ++s) {
                PlainFrame f;
                f.n = n;
                for (unsigned w = 0; w < n; ++w)
                    if (o >> w & 1u) f.normal.insert(w);
                for (unsigned t = 0; t < triples; ++t)
                    if (r >> t & 1u) f.rel.insert({t / (n * n), t / n % n, t % n});
                unsigned code = s;
                f.star.assign(n, 0);
                for (unsigned w = 0; w < n; ++w) {
                    f.star[w] = code % n;
                    code /= n;
                }
                if (plain_frame_ok(f)) out.push_back(f);
            }
        }
    }
    return out;
}

}  // namespace pearl::testing
