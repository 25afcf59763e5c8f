#include <deque>

#include "spatialkit/geometry.hpp"

namespace spatialkit {

StructuringElement::StructuringElement(ElementShape shape, Mask mask) : shape_(shape), mask_(std::move(mask)) {
    if (mask_.rows() != mask_.cols() || mask_.rows() % 2 == 0)
        throw ArgumentError("structuring element must be square with an odd side");
    if (!mask_.any()) throw ArgumentError("structuring element needs at least one active cell");
}

namespace {

void check_side(int side) {
    if (side < 1 || side % 2 == 0)
        throw ArgumentError("structuring element side must be odd and positive, got " + std::to_string(side));
}

}  // namespace

StructuringElement StructuringElement::square(int side) {
    check_side(side);
    return {ElementShape::Square, Mask::Constant(side, side, true)};
}

StructuringElement StructuringElement::diagonal(int side) {
    check_side(side);
    Mask m = Mask::Constant(side, side, false);
    for (int i = 0; i < side; ++i) m(i, i) = true;
    return {ElementShape::Diagonal, m};
}

StructuringElement StructuringElement::anti_diagonal(int side) {
    check_side(side);
    Mask m = Mask::Constant(side, side, false);
    for (int i = 0; i < side; ++i) m(i, side - 1 - i) = true;
    return {ElementShape::AntiDiagonal, m};
}

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 0) throw ArgumentError("disk radius must be >= 0");
    const int side = 2 * radius + 1;
    Mask m(side, side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) m(y, x) = (x - radius) * (x - radius) + (y - radius) * (y - radius) <= radius * radius;
    return {ElementShape::Disk, m};
}

namespace {

struct Offset {
    int dx, dy;
};

std::vector<Offset> offsets_of(const StructuringElement& elem) {
    std::vector<Offset> out;
    const int c = elem.side() / 2;
    for (int y = 0; y < elem.side(); ++y)
        for (int x = 0; x < elem.side(); ++x)
            if (elem.mask()(y, x)) out.push_back({x - c, y - c});
    return out;
}

ImageBuffer dilate(const ImageBuffer& img, const std::vector<Offset>& offsets) {
    const int w = img.width(), h = img.height();
    ImageBuffer out(w, h, ColorSpace::Binary);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (img.at(x, y) == 0) continue;
            for (const Offset& o : offsets) {
                const int nx = x + o.dx, ny = y + o.dy;
                if (nx >= 0 && ny >= 0 && nx < w && ny < h) out.at(nx, ny) = 255;
            }
        }
    return out;
}

ImageBuffer erode(const ImageBuffer& img, const std::vector<Offset>& offsets) {
    const int w = img.width(), h = img.height();
    ImageBuffer out(w, h, ColorSpace::Binary);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            bool keep = true;
            for (const Offset& o : offsets) {
                const int nx = x + o.dx, ny = y + o.dy;
                if (nx >= 0 && ny >= 0 && nx < w && ny < h && img.at(nx, ny) == 0) {
                    keep = false;
                    break;
                }
            }
            if (keep) out.at(x, y) = 255;
        }
    return out;
}

}  // namespace

ImageBuffer morph(const ImageBuffer& binary, const StructuringElement& elem, MorphOp op) {
    require_binary(binary, "morph");
    const auto offsets = offsets_of(elem);
    switch (op) {
    case MorphOp::Dilate: return dilate(binary, offsets);
    case MorphOp::Erode: return erode(binary, offsets);
    case MorphOp::Open: return dilate(erode(binary, offsets), offsets);
    case MorphOp::Close: return erode(dilate(binary, offsets), offsets);
    }
    return binary;
}

namespace {

template <typename Fn>
ImageBuffer combine(const ImageBuffer& a, const ImageBuffer& b, Fn fn, std::string_view op) {
    require_binary(a, op);
    require_binary(b, op);
    if (a.width() != b.width() || a.height() != b.height())
        throw ArgumentError(std::string(op) + ": dimension mismatch");
    ImageBuffer out(a.width(), a.height(), ColorSpace::Binary);
    for (std::size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] = fn(a.data()[i] != 0, b.data()[i] != 0) ? 255 : 0;
    return out;
}

}  // namespace

ImageBuffer binary_union(const ImageBuffer& a, const ImageBuffer& b) {
    return combine(a, b, [](bool p, bool q) { return p || q; }, "binary_union");
}

ImageBuffer binary_intersection(const ImageBuffer& a, const ImageBuffer& b) {
    return combine(a, b, [](bool p, bool q) { return p && q; }, "binary_intersection");
}

ImageBuffer binary_difference(const ImageBuffer& a, const ImageBuffer& b) {
    return combine(a, b, [](bool p, bool q) { return p && !q; }, "binary_difference");
}

ImageBuffer fill_holes(const ImageBuffer& binary) {
    require_binary(binary, "fill_holes");
    const int w = binary.width(), h = binary.height();
    Plane<std::uint8_t> outside = Plane<std::uint8_t>::Zero(h, w);
    std::deque<std::pair<int, int>> queue;
    auto seed = [&](int x, int y) {
        if (binary.at(x, y) == 0 && !outside(y, x)) {
            outside(y, x) = 1;
            queue.emplace_back(x, y);
        }
    };
    for (int x = 0; x < w; ++x) {
        seed(x, 0);
        seed(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        seed(0, y);
        seed(w - 1, y);
    }
    constexpr int dxs[] = {1, -1, 0, 0}, dys[] = {0, 0, 1, -1};
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        for (int i = 0; i < 4; ++i) {
            const int nx = x + dxs[i], ny = y + dys[i];
            if (nx >= 0 && ny >= 0 && nx < w && ny < h) seed(nx, ny);
        }
    }
    ImageBuffer out = binary;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!outside(y, x)) out.at(x, y) = 255;
    return out;
}

LabeledRegions connected_components(const ImageBuffer& binary) {
    require_binary(binary, "connected_components");
    const int w = binary.width(), h = binary.height();
    LabeledRegions out{Plane<int>::Zero(h, w), {}};
    std::deque<std::pair<int, int>> queue;
    for (int y0 = 0; y0 < h; ++y0)
        for (int x0 = 0; x0 < w; ++x0) {
            if (binary.at(x0, y0) == 0 || out.labels(y0, x0) != 0) continue;
            Region region{static_cast<int>(out.regions.size()) + 1, x0, y0, x0, y0, 0};
            out.labels(y0, x0) = region.label;
            queue.emplace_back(x0, y0);
            while (!queue.empty()) {
                const auto [x, y] = queue.front();
                queue.pop_front();
                ++region.area;
                region.min_x = std::min(region.min_x, x);
                region.max_x = std::max(region.max_x, x);
                region.min_y = std::min(region.min_y, y);
                region.max_y = std::max(region.max_y, y);
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        if (binary.at(nx, ny) != 0 && out.labels(ny, nx) == 0) {
                            out.labels(ny, nx) = region.label;
                            queue.emplace_back(nx, ny);
                        }
                    }
            }
            out.regions.push_back(region);
        }
    return out;
}

}  // namespace spatialkit
