// Independent numeric oracles used to cross-check the combinatorial engines.
// These deliberately avoid the code paths they certify: the flood-fill
// component count knows nothing about Hamming adjacency.
#ifndef NASHATLAS_ORACLES_HPP
#define NASHATLAS_ORACLES_HPP

#include <cstddef>
#include <vector>

#include "nashatlas/weld.hpp"

namespace nashatlas {

// Counts connected components of the manifold locus of the closed orthant
// union on a grid of [-1,1]^ell (odd resolution, so coordinate hyperplanes
// are sampled). A grid point is regular when the closed orthants through it
// fill a full neighborhood: the consistent sign vectors restricted to its
// zero coordinates must exhaust all sign patterns there.
inline std::size_t floodfill_component_count(const OrthantSet& F, int resolution = 41) {
    const int ell = F.ell();
    if (resolution % 2 == 0) ++resolution;
    std::size_t total = 1;
    for (int i = 0; i < ell; ++i) total *= static_cast<std::size_t>(resolution);

    auto coord = [&](std::size_t flat, int axis) {
        for (int a = 0; a < axis; ++a) flat /= resolution;
        return static_cast<int>(flat % resolution) - resolution / 2;  // integer grid, 0 on hyperplanes
    };

    std::vector<char> regular(total, 0);
    std::vector<int> x(ell);
    for (std::size_t p = 0; p < total; ++p) {
        for (int a = 0; a < ell; ++a) x[a] = coord(p, a);
        // orthants consistent with the nonzero coordinates
        std::vector<const SignVec*> consistent;
        for (const auto& eps : F.family()) {
            bool ok = true;
            for (int a = 0; a < ell && ok; ++a)
                if (x[a] != 0 && eps[a] * x[a] < 0) ok = false;
            if (ok) consistent.push_back(&eps);
        }
        if (consistent.empty()) continue;  // not in the closure
        std::vector<int> zero_axes;
        for (int a = 0; a < ell; ++a)
            if (x[a] == 0) zero_axes.push_back(a);
        // restricted sign patterns must fill {-1,+1}^{#zero}
        std::size_t need = static_cast<std::size_t>(1) << zero_axes.size();
        std::vector<char> hit(need, 0);
        std::size_t count = 0;
        for (const SignVec* eps : consistent) {
            std::size_t code = 0;
            for (std::size_t z = 0; z < zero_axes.size(); ++z)
                if ((*eps)[zero_axes[z]] > 0) code |= (static_cast<std::size_t>(1) << z);
            if (!hit[code]) {
                hit[code] = 1;
                ++count;
            }
        }
        regular[p] = count == need;
    }

    // flood fill over axis neighbors
    std::vector<int> label(total, -1);
    std::size_t components = 0;
    std::vector<std::size_t> stack;
    std::vector<std::size_t> stride(ell, 1);
    for (int a = 1; a < ell; ++a) stride[a] = stride[a - 1] * resolution;
    for (std::size_t seed = 0; seed < total; ++seed) {
        if (!regular[seed] || label[seed] >= 0) continue;
        ++components;
        stack.push_back(seed);
        label[seed] = static_cast<int>(components);
        while (!stack.empty()) {
            std::size_t p = stack.back();
            stack.pop_back();
            for (int a = 0; a < ell; ++a) {
                int c = coord(p, a);
                if (c > -(resolution / 2)) {
                    std::size_t q = p - stride[a];
                    if (regular[q] && label[q] < 0) {
                        label[q] = label[seed];
                        stack.push_back(q);
                    }
                }
                if (c < resolution / 2) {
                    std::size_t q = p + stride[a];
                    if (regular[q] && label[q] < 0) {
                        label[q] = label[seed];
                        stack.push_back(q);
                    }
                }
            }
        }
    }
    return components;
}

}  // namespace nashatlas

#endif
