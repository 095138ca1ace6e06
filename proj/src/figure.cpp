#include "lagbound/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lagbound/numeric.hpp"
#include "lagbound/report.hpp"

namespace lagbound {

namespace {

constexpr double kW = 640, kH = 160, kPad = 36;

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3f", v);
  return b;
}

}  // namespace

FigureResult render_family(const Family& f) {
  FigureResult out;
  const bool plane = f.spec.id == FamilyId::plane_circles;
  const bool ladder = f.spec.id == FamilyId::hs_family || f.spec.id == FamilyId::hs_variant_alpha;
  const InvariantKind kind = plane ? InvariantKind::enclosed_area : InvariantKind::liouville_class;
  for (size_t i = 0; i < f.curves.size(); ++i) {
    const Curve& c = f.curves[i];
    FigureRow row;
    row.member = c.id();
    row.parameter = f.parameter[i];
    row.curvature = geodesic_curvature(c, false).sup_norm;
    if (!ladder) {
      TamenessOptions opt;
      opt.estimate_error = false;
      row.epsilon = tameness(c, opt).epsilon;
    }
    HausdorffOptions hopt;
    hopt.estimate_error = false;
    row.hausdorff = hausdorff_distance(c, *f.base_curve, hopt).value;
    row.invariant = isotopy_invariant(c, kind).value;
    out.rows.push_back(row);
  }

  CsvTable t({"member", "parameter", "curvature", "epsilon", "hausdorff", "invariant"}, "family=" + to_string(f.spec.id));
  for (const auto& r : out.rows) {
    t.cell(r.member).cell(r.parameter).cell(r.curvature);
    if (r.epsilon)
      t.cell(*r.epsilon);
    else
      t.cell(std::string());
    t.cell(r.hausdorff).cell(r.invariant);
    t.end_row();
  }
  out.csv = t.str();

  const double L = f.patch->length(), r = f.patch->halfwidth();
  const size_t panels = f.curves.size();
  const double height = panels * (kH + kPad) + kPad;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW + 2 * kPad) + "\" height=\"" + num(height) +
       "\" viewBox=\"0 0 " + num(kW + 2 * kPad) + " " + num(height) + "\">\n";
  s += "<!-- family=" + to_string(f.spec.id) + " length=" + fmt_double(L) + " halfwidth=" + fmt_double(r) + " -->\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < panels; ++i) {
    const Curve& c = f.curves[i];
    const FigureRow& row = out.rows[i];
    const double y0 = kPad + i * (kH + kPad);
    auto X = [&](double q) { return kPad + kW * q / L; };
    auto Y = [&](double p) { return y0 + kH * (0.5 - 0.5 * p / r); };
    s += "<!-- member=" + row.member + " parameter=" + fmt_double(row.parameter) + " curvature=" + fmt_double(row.curvature) +
         " hausdorff=" + fmt_double(row.hausdorff) + " invariant=" + fmt_double(row.invariant) + " -->\n";
    s += "<rect x=\"" + num(kPad) + "\" y=\"" + num(y0) + "\" width=\"" + num(kW) + "\" height=\"" + num(kH) +
         "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.5\"/>\n";
    s += "<line x1=\"" + num(X(0)) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" + num(X(L)) + "\" y2=\"" + num(Y(0)) +
         "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(kPad) + "\" y=\"" + num(y0 - 6) + "\" font-family=\"sans-serif\" font-size=\"12\">" + row.member +
         "  |B| = " + fmt_double(row.curvature) + "</text>\n";
    const int n = c.size();
    const int m = std::min(n, 4096);
    s += "<polyline fill=\"none\" stroke=\"#1f4e9e\" stroke-width=\"1.2\" points=\"";
    for (int k = 0; k <= m; ++k) {
      const double q = L * k / m;
      s += num(X(q)) + "," + num(Y(c.xi(q))) + (k < m ? " " : "");
    }
    s += "\"/>\n";
  }
  s += "</svg>\n";
  out.svg = std::move(s);
  return out;
}

FigureResult run_figure(const FamilySpec& spec, const std::filesystem::path& svg_path) {
  const Family f = generate_family(spec);
  FigureResult r = render_family(f);
  write_file(svg_path, r.svg);
  std::filesystem::path csv = svg_path;
  csv.replace_extension(".csv");
  write_file(csv, r.csv);
  return r;
}

}  // namespace lagbound
