#include "pfdcp/filters.hpp"

#include <vector>

namespace pfdcp {

namespace {

// out[i] = min(a[max(0,i-r) .. min(n-1,i+r)]), monotonic-queue sliding minimum.
void sliding_min_1d(const double* a, int n, int stride, int r, double* out,
                    int out_stride, std::vector<int>& queue) {
    queue.clear();
    int head = 0;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + r);
        for (; next <= hi; ++next) {
            while (static_cast<int>(queue.size()) > head &&
                   a[static_cast<std::size_t>(queue.back()) * stride] >=
                       a[static_cast<std::size_t>(next) * stride])
                queue.pop_back();
            queue.push_back(next);
        }
        while (queue[head] < i - r) ++head;
        out[static_cast<std::size_t>(i) * out_stride] =
            a[static_cast<std::size_t>(queue[head]) * stride];
    }
}

}  // namespace

GrayImage min_filter(const GrayImage& img, int patch) {
    if (patch < 1 || patch % 2 == 0)
        throw std::invalid_argument("min_filter: patch must be odd and >= 1");
    if (patch == 1) return img;
    const int r = patch / 2;
    const int w = img.width, h = img.height;

    GrayImage rows(w, h);
    std::vector<int> queue;
    queue.reserve(patch);
    for (int y = 0; y < h; ++y)
        sliding_min_1d(&img.data[static_cast<std::size_t>(y) * w], w, 1, r,
                       &rows.data[static_cast<std::size_t>(y) * w], 1, queue);

    GrayImage out(w, h);
    for (int x = 0; x < w; ++x)
        sliding_min_1d(&rows.data[x], h, w, r, &out.data[x], w, queue);
    return out;
}

GrayImage box_filter(const GrayImage& img, int radius) {
    if (radius < 0) throw std::invalid_argument("box_filter: negative radius");
    if (radius == 0) return img;
    const int w = img.width, h = img.height;

    // Summed-area table with a zero guard row/column.
    std::vector<double> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        double row = 0.0;
        for (int x = 0; x < w; ++x) {
            row += img.at(y, x);
            sat[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
                sat[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
        }
    }

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius);
        const int y1 = std::min(h - 1, y + radius);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius);
            const int x1 = std::min(w - 1, x + radius);
            const double sum =
                sat[static_cast<std::size_t>(y1 + 1) * (w + 1) + (x1 + 1)] -
                sat[static_cast<std::size_t>(y0) * (w + 1) + (x1 + 1)] -
                sat[static_cast<std::size_t>(y1 + 1) * (w + 1) + x0] +
                sat[static_cast<std::size_t>(y0) * (w + 1) + x0];
            out.at(y, x) = sum / ((y1 - y0 + 1) * (x1 - x0 + 1));
        }
    }
    return out;
}

}  // namespace pfdcp
