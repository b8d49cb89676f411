#include "sfhp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfhp/errors.hpp"

namespace sfhp {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& text, std::size_t row) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last) {
    throw Error("trajectory CSV: bad number '" + text + "' on data row " + std::to_string(row));
  }
  return value;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw Error("cannot open " + file.string() + " for writing");
  }
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int d = traj.dim();
  out << "n,s,dW";
  for (const char* prefix : {"q_", "v_", "p_"}) {
    for (int i = 0; i < d; ++i) {
      out << ',' << prefix << i;
    }
  }
  out << '\n';
  const auto rows = traj.times.size();
  for (Eigen::Index r = 0; r < rows; ++r) {
    out << r << ',' << format_double(traj.times(r)) << ',';
    if (r < traj.dW.size()) {
      out << format_double(traj.dW(r));
    }
    for (const Matrix* m : {&traj.q, &traj.v, &traj.p}) {
      for (int i = 0; i < d; ++i) {
        out << ',' << format_double((*m)(r, i));
      }
    }
    out << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj) {
  auto out = open_out(file);
  write_trajectory_csv(out, traj);
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("trajectory CSV: missing header");
  }
  const auto header = split(line);
  if (header.size() < 6 || (header.size() - 3) % 3 != 0 || header[0] != "n" || header[1] != "s" ||
      header[2] != "dW") {
    throw Error("trajectory CSV: unexpected header '" + line + "'");
  }
  const int d = static_cast<int>((header.size() - 3) / 3);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      rows.push_back(split(line));
    }
  }
  if (rows.size() < 2) {
    throw Error("trajectory CSV: need at least two grid points");
  }
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  Trajectory traj;
  traj.times.resize(n_rows);
  traj.dW.resize(n_rows - 1);
  traj.q.resize(n_rows, d);
  traj.v.resize(n_rows, d);
  traj.p.resize(n_rows, d);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& f = rows[static_cast<std::size_t>(r)];
    const auto row_no = static_cast<std::size_t>(r);
    if (f.size() != header.size()) {
      throw Error("trajectory CSV: wrong field count on data row " + std::to_string(row_no));
    }
    traj.times(r) = parse_double(f[1], row_no);
    if (r + 1 < n_rows) {
      traj.dW(r) = parse_double(f[2], row_no);
    } else if (!f[2].empty()) {
      throw Error("trajectory CSV: dW must be empty on the last row");
    }
    for (int i = 0; i < d; ++i) {
      traj.q(r, i) = parse_double(f[3 + static_cast<std::size_t>(i)], row_no);
      traj.v(r, i) = parse_double(f[3 + static_cast<std::size_t>(d + i)], row_no);
      traj.p(r, i) = parse_double(f[3 + static_cast<std::size_t>(2 * d + i)], row_no);
    }
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error("cannot open " + file.string());
  }
  return read_trajectory_csv(in);
}

void write_summary_csv(const std::filesystem::path& file, const EnsembleSummary& summary) {
  auto out = open_out(file);
  const auto d = summary.mean_q.cols();
  out << "n,s";
  for (const char* prefix : {"mean_q_", "var_q_", "mean_p_", "var_p_"}) {
    for (Eigen::Index i = 0; i < d; ++i) {
      out << ',' << prefix << i;
    }
  }
  out << '\n';
  for (Eigen::Index r = 0; r < summary.times.size(); ++r) {
    out << r << ',' << format_double(summary.times(r));
    for (const Matrix* m : {&summary.mean_q, &summary.var_q, &summary.mean_p, &summary.var_p}) {
      for (Eigen::Index i = 0; i < d; ++i) {
        out << ',' << format_double((*m)(r, i));
      }
    }
    out << '\n';
  }
}

void write_svg(const std::filesystem::path& file, const LinePlot& plot) {
  constexpr double kWidth = 640, kHeight = 480, kMargin = 60;
  auto out = open_out(file);
  auto [xmin_it, xmax_it] = std::minmax_element(plot.x.begin(), plot.x.end());
  auto [ymin_it, ymax_it] = std::minmax_element(plot.y.begin(), plot.y.end());
  double xmin = plot.x.empty() ? 0.0 : *xmin_it, xmax = plot.x.empty() ? 1.0 : *xmax_it;
  double ymin = plot.y.empty() ? 0.0 : *ymin_it, ymax = plot.y.empty() ? 1.0 : *ymax_it;
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double sx = (kWidth - 2 * kMargin) / (xmax - xmin);
  const double sy = (kHeight - 2 * kMargin) / (ymax - ymin);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << plot.title << "</text>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << plot.x_label << "</text>\n";
  out << "<text x=\"15\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 15 " << kHeight / 2
      << ")\" text-anchor=\"middle\">" << plot.y_label << "</text>\n";
  char tick[64];
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    std::snprintf(tick, sizeof tick, "%.4g", fx);
    out << "<text x=\"" << kMargin + (fx - xmin) * sx << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\">" << tick << "</text>\n";
    std::snprintf(tick, sizeof tick, "%.4g", fy);
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin - (fy - ymin) * sy + 4
        << "\" text-anchor=\"end\">" << tick << "</text>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
  // Thin very long series; the plot is only a picture of the CSV.
  const std::size_t stride = std::max<std::size_t>(1, plot.x.size() / 4000);
  for (std::size_t i = 0; i < plot.x.size(); i += stride) {
    std::snprintf(tick, sizeof tick, "%.2f,%.2f ", kMargin + (plot.x[i] - xmin) * sx,
                  kHeight - kMargin - (plot.y[i] - ymin) * sy);
    out << tick;
  }
  out << "\"/>\n</svg>\n";
}

std::vector<std::filesystem::path> plot_trajectory_csv(const std::filesystem::path& csv,
                                                       const std::filesystem::path& out_dir,
                                                       const std::string& stem,
                                                       const std::string& title) {
  const Trajectory traj = read_trajectory_csv(csv);
  std::vector<double> n(static_cast<std::size_t>(traj.times.size()));
  std::vector<double> q(n.size()), p(n.size());
  for (std::size_t r = 0; r < n.size(); ++r) {
    n[r] = static_cast<double>(r);
    q[r] = traj.q(static_cast<Eigen::Index>(r), 0);
    p[r] = traj.p(static_cast<Eigen::Index>(r), 0);
  }
  std::vector<std::filesystem::path> files = {out_dir / (stem + "_n_q.svg"),
                                              out_dir / (stem + "_n_p.svg"),
                                              out_dir / (stem + "_q_p.svg")};
  write_svg(files[0], {title + ": (n, q)", "n", "q", n, q});
  write_svg(files[1], {title + ": (n, p)", "n", "p", n, p});
  write_svg(files[2], {title + ": (q, p)", "q", "p", q, p});
  return files;
}

}  // namespace sfhp
