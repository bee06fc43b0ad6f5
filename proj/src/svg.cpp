#include "stylo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace stylo::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 90.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* colour(std::size_t i) { return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

// Fixed two-decimal coordinates keep the markup stable across platforms.
std::string num(double v) {
    if (std::fabs(v) < 0.005) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    if (v != 0.0 && (std::fabs(v) >= 1e5 || std::fabs(v) < 1e-3)) {
        std::snprintf(buf, sizeof buf, "%.2e", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.4g", std::fabs(v) < 1e-12 ? 0.0 : v);
    }
    return buf;
}

struct Range {
    double lo;
    double hi;
};

Range padded(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) return {0.0, 1.0};
    if (hi - lo < 1e-12) {
        const double pad = std::max(1.0, std::fabs(lo) * 0.1);
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

class Canvas {
public:
    Canvas(const std::string& title, Range x, Range y) : x_(x), y_(y) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
             << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
             << "\" fill=\"white\"/>\n";
        out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kTop / 2 + 6)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << escape(title)
             << "</text>\n";
    }

    double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
    double py(double y) const { return kTop + (y_.hi - y) / (y_.hi - y_.lo) * plot_h(); }
    static double plot_w() { return kWidth - kLeft - kRight; }
    static double plot_h() { return kHeight - kTop - kBottom; }

    void frame() {
        out_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w())
             << "\" height=\"" << num(plot_h()) << "\" fill=\"none\" stroke=\"black\"/>\n";
    }

    void y_axis(const std::string& label) {
        for (int i = 0; i <= 4; ++i) {
            const double v = y_.lo + (y_.hi - y_.lo) * i / 4.0;
            const double y = py(v);
            line(kLeft - 5, y, kLeft, y, "black");
            text(kLeft - 8, y + 4, tick_label(v), "end", 11);
        }
        out_ << "<text x=\"18\" y=\"" << num(kTop + plot_h() / 2) << "\" transform=\"rotate(-90 18 "
             << num(kTop + plot_h() / 2) << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
             << escape(label) << "</text>\n";
    }

    void x_axis(const std::string& label) {
        for (int i = 0; i <= 4; ++i) {
            const double v = x_.lo + (x_.hi - x_.lo) * i / 4.0;
            const double x = px(v);
            line(x, kTop + plot_h(), x, kTop + plot_h() + 5, "black");
            text(x, kTop + plot_h() + 18, tick_label(v), "middle", 11);
        }
        text(kLeft + plot_w() / 2, kHeight - 30, label, "middle", 13);
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke) {
        out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
             << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const char* fill) {
        out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
             << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
    }

    void circle(double x, double y, double r, const char* fill) {
        out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
             << "\" fill-opacity=\"0.7\"/>\n";
    }

    void text(double x, double y, const std::string& s, const char* anchor, int size) {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
             << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << escape(s) << "</text>\n";
    }

    void legend(const std::vector<std::string>& labels) {
        const double x = kWidth - kRight + 15;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const double y = kTop + 10 + 18.0 * static_cast<double>(i);
            out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
                 << colour(i) << "\"/>\n";
            text(x + 16, y, labels[i], "start", 12);
        }
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    Range x_;
    Range y_;
    std::ostringstream out_;
};

// Category slot centres along the x axis.
double slot_centre(std::size_t i, std::size_t n) {
    return kLeft + Canvas::plot_w() * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

void category_labels(Canvas& c, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        c.text(slot_centre(i, labels.size()), kTop + Canvas::plot_h() + 18, labels[i], "middle", 11);
    }
}

}  // namespace

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string bar_chart(const std::string& title, const std::string& y_label, const std::vector<BarSeries>& bars) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& b : bars) {
        lo = std::min(lo, b.mean - b.standard_error);
        hi = std::max(hi, b.mean + b.standard_error);
    }
    Canvas c(title, {0.0, 1.0}, padded(lo, hi));
    c.frame();
    c.y_axis(y_label);
    std::vector<std::string> labels;
    const double slot = Canvas::plot_w() / static_cast<double>(std::max<std::size_t>(1, bars.size()));
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = bars[i];
        labels.push_back(b.label);
        const double cx = slot_centre(i, bars.size());
        const double top = c.py(std::max(0.0, b.mean));
        const double bottom = c.py(std::min(0.0, b.mean));
        c.rect(cx - slot * 0.3, top, slot * 0.6, bottom - top, colour(i));
        if (b.standard_error > 0.0) {
            const double y1 = c.py(b.mean - b.standard_error);
            const double y2 = c.py(b.mean + b.standard_error);
            c.line(cx, y1, cx, y2, "black");
            c.line(cx - slot * 0.1, y1, cx + slot * 0.1, y1, "black");
            c.line(cx - slot * 0.1, y2, cx + slot * 0.1, y2, "black");
        }
    }
    category_labels(c, labels);
    return c.finish();
}

std::string box_plot(const std::string& title, const std::string& y_label, const std::vector<BoxSeries>& boxes) {
    double lo = boxes.empty() ? 0.0 : boxes.front().summary.min;
    double hi = boxes.empty() ? 1.0 : boxes.front().summary.max;
    for (const auto& b : boxes) {
        lo = std::min(lo, b.summary.min);
        hi = std::max(hi, b.summary.max);
    }
    Canvas c(title, {0.0, 1.0}, padded(lo, hi));
    c.frame();
    c.y_axis(y_label);
    std::vector<std::string> labels;
    const double slot = Canvas::plot_w() / static_cast<double>(std::max<std::size_t>(1, boxes.size()));
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& s = boxes[i].summary;
        labels.push_back(boxes[i].label);
        const double cx = slot_centre(i, boxes.size());
        const double half = slot * 0.25;
        c.line(cx, c.py(s.min), cx, c.py(s.q1), "black");
        c.line(cx, c.py(s.q3), cx, c.py(s.max), "black");
        c.line(cx - half / 2, c.py(s.min), cx + half / 2, c.py(s.min), "black");
        c.line(cx - half / 2, c.py(s.max), cx + half / 2, c.py(s.max), "black");
        c.rect(cx - half, c.py(s.q3), 2 * half, c.py(s.q1) - c.py(s.q3), colour(i));
        c.line(cx - half, c.py(s.median), cx + half, c.py(s.median), "black");
    }
    category_labels(c, labels);
    return c.finish();
}

std::string scatter(const std::string& title, const std::string& x_label, const std::string& y_label,
                    const std::vector<ScatterGroup>& groups) {
    double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
    bool first = true;
    for (const auto& g : groups) {
        for (const auto& p : g.points) {
            if (first) {
                xlo = xhi = p[0];
                ylo = yhi = p[1];
                first = false;
            }
            xlo = std::min(xlo, p[0]);
            xhi = std::max(xhi, p[0]);
            ylo = std::min(ylo, p[1]);
            yhi = std::max(yhi, p[1]);
        }
    }
    Canvas c(title, padded(xlo, xhi), padded(ylo, yhi));
    c.frame();
    c.x_axis(x_label);
    c.y_axis(y_label);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        labels.push_back(groups[i].label);
        for (const auto& p : groups[i].points) c.circle(c.px(p[0]), c.py(p[1]), 3.0, colour(i));
    }
    c.legend(labels);
    return c.finish();
}

}  // namespace stylo::svg
