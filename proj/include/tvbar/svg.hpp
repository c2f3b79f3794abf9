#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/signal.hpp"

namespace tvbar {

namespace svg {

inline std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

struct Curve {
    std::vector<double> x, y;
    std::string color = "#1f77b4";
};

struct Row {
    std::string label;
    std::vector<const BarCode*> codes; // filled bars on [0,1] value scale
    std::vector<std::string> code_colors;
    std::vector<Curve> curves;
};

// Stacked rows sharing one x-axis; each row autoscales its own y range.
class Plot {
public:
    Plot(double width = 900.0, double row_height = 150.0) : width_(width), row_height_(row_height) {}

    Row& add_row(const std::string& label) {
        rows_.push_back(Row{label, {}, {}, {}});
        return rows_.back();
    }

    std::string render() const {
        double xlo = 0.0, xhi = 1.0;
        for (const Row& r : rows_)
            for (const Curve& c : r.curves)
                for (double v : c.x) {
                    xlo = std::min(xlo, v);
                    xhi = std::max(xhi, v);
                }
        if (xhi <= xlo) xhi = xlo + 1.0;

        const double margin = 40.0;
        const double height = row_height_ * static_cast<double>(rows_.size()) + 2.0 * margin;
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height)
           << "\" viewBox=\"0 0 " << num(width_) << " " << num(height) << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

        auto px = [&](double x) { return margin + (x - xlo) / (xhi - xlo) * (width_ - 2.0 * margin); };

        for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
            const Row& r = rows_[ri];
            const double top = margin + row_height_ * static_cast<double>(ri) + 10.0;
            const double bottom = top + row_height_ - 30.0;

            double ylo = 0.0, yhi = 1.0;
            for (const Curve& c : r.curves)
                for (double v : c.y) {
                    ylo = std::min(ylo, v);
                    yhi = std::max(yhi, v);
                }
            if (yhi <= ylo) yhi = ylo + 1.0;
            const double ypad = 0.05 * (yhi - ylo);
            ylo -= ypad;
            yhi += ypad;
            auto py = [&](double y) { return bottom - (y - ylo) / (yhi - ylo) * (bottom - top); };

            os << "<text x=\"" << num(margin) << "\" y=\"" << num(top - 2.0) << "\" font-family=\"sans-serif\""
               << " font-size=\"12\">" << escape(r.label) << "</text>\n";
            os << "<line x1=\"" << num(px(xlo)) << "\" y1=\"" << num(py(0.0)) << "\" x2=\"" << num(px(xhi))
               << "\" y2=\"" << num(py(0.0)) << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";

            for (std::size_t ci = 0; ci < r.codes.size(); ++ci) {
                const std::string color = ci < r.code_colors.size() ? r.code_colors[ci] : "#222222";
                for (const auto& [a, b] : r.codes[ci]->bar_intervals()) {
                    os << "<rect x=\"" << num(px(a)) << "\" y=\"" << num(py(1.0)) << "\" width=\""
                       << num(px(b) - px(a)) << "\" height=\"" << num(py(0.0) - py(1.0)) << "\" fill=\"" << color
                       << "\" fill-opacity=\"0.35\"/>\n";
                }
            }
            for (const Curve& c : r.curves) {
                if (c.x.size() < 2) continue;
                os << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.2\" points=\"";
                for (std::size_t i = 0; i < c.x.size(); ++i) {
                    if (i) os << ' ';
                    os << num(px(c.x[i])) << ',' << num(py(c.y[i]));
                }
                os << "\"/>\n";
            }
        }
        os << "</svg>\n";
        return os.str();
    }

private:
    double width_;
    double row_height_;
    std::vector<Row> rows_;
};

inline Curve sample_curve(const Signal& s, double lo, double hi, std::size_t n, const std::string& color) {
    Curve c;
    c.color = color;
    c.x.resize(n);
    c.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        c.x[i] = x;
        c.y[i] = s(x);
    }
    return c;
}

} // namespace svg

// Three rows: generating code, observed signal, reconstruction overlaying
// field and thresholded code.
inline std::string overlay_svg(const BarCode* generating, const Signal* observed, const GridSignal* field,
                               const BarCode* reconstructed) {
    svg::Plot plot;
    double lo = 0.0, hi = 1.0;
    if (observed) {
        lo = std::min(lo, observed->hull().first);
        hi = std::max(hi, observed->hull().second);
    }
    if (field) {
        lo = std::min(lo, field->x0);
        hi = std::max(hi, field->x_last());
    }
    svg::Row& r1 = plot.add_row("generating code");
    if (generating) {
        r1.codes.push_back(generating);
        r1.code_colors.push_back("#222222");
    }
    svg::Row& r2 = plot.add_row("observed signal");
    if (observed) r2.curves.push_back(svg::sample_curve(*observed, lo, hi, 1200, "#1f77b4"));
    svg::Row& r3 = plot.add_row("reconstruction");
    if (reconstructed) {
        r3.codes.push_back(reconstructed);
        r3.code_colors.push_back("#d62728");
    }
    if (field) {
        Signal fs(*field);
        r3.curves.push_back(svg::sample_curve(fs, lo, hi, 1200, "#2ca02c"));
    }
    if (generating) {
        r3.codes.push_back(generating);
        r3.code_colors.push_back("#bbbbbb");
    }
    return plot.render();
}

} // namespace tvbar
