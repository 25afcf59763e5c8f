#include <cmath>
#include <numbers>

#include "spatialkit/geometry.hpp"

namespace spatialkit {

namespace {

constexpr double kPole = -0.26794919243112270;  // sqrt(3) - 2, cubic B-spline pole

int mirror_index(int k, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    k %= period;
    if (k < 0) k += period;
    return k < n ? k : period - k;
}

// In-place interpolation prefilter along one line (whole-sample mirror boundary).
void prefilter_line(std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    if (n == 1) return;
    const double z = kPole;
    const double lambda = (1.0 - z) * (1.0 - 1.0 / z);
    for (double& v : c) v *= lambda;

    const int horizon = static_cast<int>(std::ceil(std::log(1e-14) / std::log(std::abs(z))));
    double sum;
    if (horizon < n) {
        double zn = z;
        sum = c[0];
        for (int k = 1; k < horizon; ++k) {
            sum += zn * c[k];
            zn *= z;
        }
    } else {
        double zn = z;
        const double iz = 1.0 / z;
        double z2n = std::pow(z, n - 1);
        sum = c[0] + z2n * c[n - 1];
        z2n *= z2n * iz;
        for (int k = 1; k <= n - 2; ++k) {
            sum += (zn + z2n) * c[k];
            zn *= z;
            z2n *= iz;
        }
        sum /= (1.0 - zn * zn);
    }
    c[0] = sum;
    for (int k = 1; k < n; ++k) c[k] += z * c[k - 1];
    c[n - 1] = (z / (z * z - 1.0)) * (z * c[n - 2] + c[n - 1]);
    for (int k = n - 2; k >= 0; --k) c[k] = z * (c[k + 1] - c[k]);
}

PlaneXd spline_coefficients(const PlaneXd& src) {
    PlaneXd c = src;
    std::vector<double> line;
    for (Eigen::Index y = 0; y < c.rows(); ++y) {
        line.assign(c.row(y).data(), c.row(y).data() + c.cols());
        prefilter_line(line);
        for (Eigen::Index x = 0; x < c.cols(); ++x) c(y, x) = line[static_cast<std::size_t>(x)];
    }
    line.resize(static_cast<std::size_t>(c.rows()));
    for (Eigen::Index x = 0; x < c.cols(); ++x) {
        for (Eigen::Index y = 0; y < c.rows(); ++y) line[static_cast<std::size_t>(y)] = c(y, x);
        prefilter_line(line);
        for (Eigen::Index y = 0; y < c.rows(); ++y) c(y, x) = line[static_cast<std::size_t>(y)];
    }
    return c;
}

void bspline_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = (1.0 - t) * (1.0 - t) * (1.0 - t) / 6.0;
    w[1] = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0;
    w[2] = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0;
    w[3] = t3 / 6.0;
}

double sample(const PlaneXd& c, double x, double y) {
    const int w = static_cast<int>(c.cols()), h = static_cast<int>(c.rows());
    const int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
    double wx[4], wy[4];
    bspline_weights(x - x0, wx);
    bspline_weights(y - y0, wy);
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        const int yy = mirror_index(y0 - 1 + j, h);
        double row = 0.0;
        for (int i = 0; i < 4; ++i) row += wx[i] * c(yy, mirror_index(x0 - 1 + i, w));
        acc += wy[j] * row;
    }
    return acc;
}

ImageBuffer quarter_turn(const ImageBuffer& img, int quarters) {
    const int w = img.width(), h = img.height();
    const bool swap = quarters % 2 == 1;
    ImageBuffer out(swap ? h : w, swap ? w : h, img.space());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            int sx = x, sy = y;
            switch (quarters) {
            case 1: sx = w - 1 - y; sy = x; break;
            case 2: sx = w - 1 - x; sy = h - 1 - y; break;
            case 3: sx = y; sy = h - 1 - x; break;
            default: break;
            }
            for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = img.at(sx, sy, c);
        }
    return out;
}

}  // namespace

ImageBuffer rotate(const ImageBuffer& img, double angle_deg) {
    double a = std::fmod(angle_deg, 360.0);
    if (a < 0.0) a += 360.0;
    if (a == 0.0 || a == 90.0 || a == 180.0 || a == 270.0) return quarter_turn(img, static_cast<int>(a / 90.0));

    const double rad = a * std::numbers::pi / 180.0;
    const double cs = std::cos(rad), sn = std::sin(rad);
    const int w = img.width(), h = img.height();
    const int out_w = std::max(1, static_cast<int>(std::ceil(std::abs(w * cs) + std::abs(h * sn) - 1e-6)));
    const int out_h = std::max(1, static_cast<int>(std::ceil(std::abs(w * sn) + std::abs(h * cs) - 1e-6)));
    const double icx = (w - 1) / 2.0, icy = (h - 1) / 2.0;
    const double ocx = (out_w - 1) / 2.0, ocy = (out_h - 1) / 2.0;

    ImageBuffer out(out_w, out_h, img.space());
    for (int c = 0; c < img.channels(); ++c) {
        const PlaneXd coeff = spline_coefficients(to_plane(img, c));
        for (int y = 0; y < out_h; ++y)
            for (int x = 0; x < out_w; ++x) {
                const double dx = x - ocx, dy = y - ocy;
                const double sx = icx + dx * cs - dy * sn;
                const double sy = icy + dx * sn + dy * cs;
                if (sx < -0.5 || sy < -0.5 || sx > w - 0.5 || sy > h - 0.5) continue;
                const double v = sample(coeff, sx, sy);
                out.at(x, y, c) = img.space() == ColorSpace::Binary ? (v >= 127.5 ? 255 : 0) : saturate_u8(v);
            }
    }
    return out;
}

}  // namespace spatialkit
