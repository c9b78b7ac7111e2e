#include "mvg/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mvg/error.hpp"
#include "mvg/inpaint.hpp"

namespace mvg {

CompareReport compare(const MvImage& result, const MvImage& truth, const Mask& unknown) {
    if (!(result.manifold() == truth.manifold()) || result.rows() != truth.rows() || result.cols() != truth.cols())
        throw DimensionError("compare: images differ in shape or manifold");
    if (unknown.rows() != result.rows() || unknown.cols() != result.cols())
        throw DimensionError("compare: mask shape does not match images");
    CompareReport r;
    double sum = 0.0, sq = 0.0;
    for (Vertex v = 0; v < result.size(); ++v) {
        if (unknown.known(v)) continue;
        const double d = result.manifold().distance(result.at(v), truth.at(v));
        sum += d;
        sq += d * d;
        r.max = std::max(r.max, d);
        ++r.count;
    }
    if (r.count > 0) {
        r.mean = sum / static_cast<double>(r.count);
        r.rms = std::sqrt(sq / static_cast<double>(r.count));
    }
    return r;
}

std::string format_report(const CompareReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "count %zu\nmean_error %.17g\nmax_error %.17g\nrms_error %.17g\n", r.count, r.mean,
                  r.max, r.rms);
    return buf;
}

MvImage nearest_known_fill(const MvImage& img, const Mask& mask) {
    MvImage out = img;
    Mask now = mask;
    while (now.unknown_count() > 0) {
        const auto border = find_border(now);
        out = initialize_border(out, now, border);
        for (Vertex v : border) now.set_known(v);
    }
    return out;
}

}  // namespace mvg
