// Deterministic SVG timing diagrams.
//
// x axis: node positions at cumulative latency; y axis: time, downward.
// Black lines are photon flights, gray dashed lines the classical
// success/acknowledgment messages, the blue polyline connects link fire
// points, the green polyline tracks Pauli frame propagation from the
// source measurement (its terminal height is the latest frame arrival),
// and red vertical segments are memory waits. Element order and numeric
// formatting (six decimals) are fixed, so identical input yields
// byte-identical output.

#pragma once

#include <cstdio>
#include <string>

#include "rtl/model.hpp"
#include "rtl/timing.hpp"

namespace rtl::svg {

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

class Builder {
public:
    void open(double width, double height) {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
                "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
                fmt(height) + "\">\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
                "\" fill=\"#ffffff\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke, double width,
              const char* dash = nullptr) {
        out_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
                "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                fmt(width) + "\"";
        if (dash) out_ += std::string(" stroke-dasharray=\"") + dash + "\"";
        out_ += "/>\n";
    }

    void polyline(const std::string& points, const char* stroke, double width) {
        out_ += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + stroke +
                "\" stroke-width=\"" + fmt(width) + "\"/>\n";
    }

    void circle(double x, double y, double r, const char* fill) {
        out_ += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) +
                "\" fill=\"" + fill + "\"/>\n";
    }

    void text(double x, double y, const std::string& s) {
        out_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
                "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">" + s +
                "</text>\n";
    }

    std::string close() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
};

} // namespace detail

inline std::string render_timing_diagram(const Path& path, const timing::Schedule& schedule,
                                         AppClass cls, double scale = 60.0,
                                         const std::string& units = "") {
    const timing::WaitReport report = timing::evaluate(path, schedule);
    const std::size_t h = path.hops();

    std::vector<Rational> cum(h + 1, Rational(0));
    for (std::size_t j = 0; j < h; ++j) cum[j + 1] = cum[j] + path.links[j].latency;

    Rational tmin = 0;
    for (const Rational& f : schedule.fire_times) tmin = Rational::min(tmin, f);
    Rational tmax = Rational::max(report.max_pauli_arrival, report.dest_ready);

    const double margin = 40.0;
    auto x = [&](const Rational& pos) { return margin + pos.to_double() * scale; };
    auto y = [&](const Rational& t) { return margin + (t - tmin).to_double() * scale; };
    const double width = 2 * margin + cum[h].to_double() * scale;
    const double height = 2 * margin + (tmax - tmin).to_double() * scale;

    detail::Builder svg;
    svg.open(width, height);
    std::string caption = std::string("pattern=") + schedule.pattern_tag + " class=" + to_string(cls);
    if (!units.empty()) caption += " unit=" + units;
    svg.text(margin, margin - 18.0, caption);

    // Node time axes.
    for (std::size_t node = 0; node <= h; ++node) {
        svg.line(x(cum[node]), margin, x(cum[node]), height - margin, "#dddddd", 1.0);
        svg.text(x(cum[node]) - 4.0, height - margin + 16.0, std::to_string(node));
    }

    // Photon flights and classical confirmations, per link.
    for (std::size_t j = 0; j < h; ++j) {
        const Link& link = path.links[j];
        const Rational f = schedule.fire_times[j];
        const Rational t = link.latency;
        const Rational xl = cum[j], xr = cum[j + 1];
        const Rational mid = (xl + xr).half();
        switch (link.kind) {
        case LinkKind::SenderReceiver:
            svg.line(x(xl), y(f), x(xr), y(f + t), "#000000", 1.5);
            svg.line(x(xr), y(f + t), x(xl), y(f + t + t), "#888888", 1.0, "4 3");
            break;
        case LinkKind::ReceiverSender:
            svg.line(x(xr), y(f), x(xl), y(f + t), "#000000", 1.5);
            svg.line(x(xl), y(f + t), x(xr), y(f + t + t), "#888888", 1.0, "4 3");
            break;
        case LinkKind::MeetInTheMiddle:
            svg.line(x(xl), y(f), x(mid), y(f + t.half()), "#000000", 1.5);
            svg.line(x(xr), y(f), x(mid), y(f + t.half()), "#000000", 1.5);
            svg.line(x(mid), y(f + t.half()), x(xl), y(f + t), "#888888", 1.0, "4 3");
            svg.line(x(mid), y(f + t.half()), x(xr), y(f + t), "#888888", 1.0, "4 3");
            break;
        case LinkKind::MidpointSource:
            svg.line(x(mid), y(f), x(xl), y(f + t.half()), "#000000", 1.5);
            svg.line(x(mid), y(f), x(xr), y(f + t.half()), "#000000", 1.5);
            // Ends exchange success information across the full link.
            svg.line(x(xl), y(f + t.half()), x(xr), y(f + t + t.half()), "#888888", 1.0, "4 3");
            svg.line(x(xr), y(f + t.half()), x(xl), y(f + t + t.half()), "#888888", 1.0, "4 3");
            break;
        }
    }

    // Trigger polyline through each link's fire point.
    {
        std::string points;
        for (std::size_t j = 0; j < h; ++j) {
            const Link& link = path.links[j];
            Rational fx;
            switch (link.kind) {
            case LinkKind::SenderReceiver: fx = cum[j]; break;
            case LinkKind::ReceiverSender: fx = cum[j + 1]; break;
            case LinkKind::MeetInTheMiddle: fx = cum[j]; break;
            case LinkKind::MidpointSource: fx = (cum[j] + cum[j + 1]).half(); break;
            }
            if (!points.empty()) points += ' ';
            points += detail::fmt(x(fx)) + "," + detail::fmt(y(schedule.fire_times[j]));
        }
        svg.polyline(points, "#1f77d0", 1.2);
        for (std::size_t j = 0; j < h; ++j) {
            const Link& link = path.links[j];
            Rational fx = link.kind == LinkKind::SenderReceiver     ? cum[j]
                          : link.kind == LinkKind::ReceiverSender   ? cum[j + 1]
                          : link.kind == LinkKind::MeetInTheMiddle ? cum[j]
                                                                   : (cum[j] + cum[j + 1]).half();
            svg.circle(x(fx), y(schedule.fire_times[j]), 2.5, "#1f77d0");
        }
    }

    // Pauli frame frontier from the source measurement: advances one hop
    // per hop latency and is pushed down by any later swap it passes.
    {
        std::vector<Rational> frontier(h + 1);
        frontier[0] = report.swap_times[0];
        for (std::size_t node = 1; node <= h; ++node) {
            frontier[node] = frontier[node - 1] + path.links[node - 1].latency;
            if (node < h) frontier[node] = Rational::max(frontier[node], report.swap_times[node]);
        }
        std::string points;
        for (std::size_t node = 0; node <= h; ++node) {
            if (!points.empty()) points += ' ';
            points += detail::fmt(x(cum[node])) + "," + detail::fmt(y(frontier[node]));
        }
        svg.polyline(points, "#2ca02c", 1.5);
    }

    // Memory waits. Intermediate node waits, then the destination's Pauli
    // wait for the T class.
    for (std::size_t node = 1; node < h; ++node) {
        const Rational& wait = report.node_waits[node - 1];
        if (wait.is_zero()) continue;
        const Rational& s = report.swap_times[node];
        svg.line(x(cum[node]), y(s - wait), x(cum[node]), y(s), "#d62728", 2.5);
    }
    if (cls == AppClass::T && !report.dest_pauli_wait.is_zero()) {
        svg.line(x(cum[h]), y(report.dest_ready), x(cum[h]),
                 y(report.dest_ready + report.dest_pauli_wait), "#d62728", 2.5);
    }

    return svg.close();
}

} // namespace rtl::svg
