#include "hcslab/figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>

#include "hcslab/io.hpp"
#include "hcslab/kerr.hpp"
#include "hcslab/metrics.hpp"

namespace hcslab::io {

namespace {

const std::vector<double> kEpsilons{0.0, 0.25, 0.5, 0.75, 1.0};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eps=%.2f", eps);
  return buf;
}

// One metric as a function of r = |alpha|, one column per epsilon.
CsvTable metric_sweep_table(const std::vector<double>& rs, double theta, double phi,
                            const std::function<double(const MomentSet&)>& metric,
                            const std::string& value_name) {
  CsvTable t;
  t.columns.push_back("r");
  for (double eps : kEpsilons) t.columns.push_back(value_name + "[" + eps_label(eps) + "]");
  for (double r : rs) {
    std::vector<double> row{r};
    for (double eps : kEpsilons) {
      const HcsParams p{eps, theta, phi, Complex{r, 0.0}};
      row.push_back(metric(moments(build_hcs_fock(p))));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void add_common_meta(CsvTable& t, double theta, double phi) {
  t.metadata.emplace_back("omega", "0");
  t.metadata.emplace_back("theta", format_number(theta));
  t.metadata.emplace_back("phi", format_number(phi));
  t.metadata.emplace_back("cutoff", "auto (poisson tail 1e-12, guarded margin)");
}

std::vector<Series> table_series(const CsvTable& t) {
  std::vector<Series> out;
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    Series s;
    s.label = t.columns[c];
    for (const auto& row : t.rows) s.y.push_back(row[c]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> table_x(const CsvTable& t) {
  std::vector<double> x;
  for (const auto& row : t.rows) x.push_back(row[0]);
  return x;
}

}  // namespace

FigureSet reproduce_figures(const std::string& out_dir) {
  namespace fs = std::filesystem;
  FigureSet result;
  fs::create_directories(out_dir);
  fs::create_directories(out_dir + "/fig5");

  const auto emit = [&](const std::string& name, const CsvTable& table,
                        const std::string& title, const std::string& xlabel,
                        const std::string& ylabel) {
    write_text_file(out_dir + "/" + name + ".csv", render_csv(table));
    result.written.push_back(out_dir + "/" + name + ".csv");
    write_text_file(out_dir + "/" + name + ".svg",
                    svg_line_plot(title, xlabel, ylabel, table_x(table), table_series(table)));
    result.written.push_back(out_dir + "/" + name + ".svg");
  };
  const auto guarded = [&](const std::string& figure, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      result.failures.emplace_back(figure, e.what());
    }
  };

  const double pi = std::numbers::pi;
  const std::vector<double> rs = linspace(0.05, 6.0, 120);

  // fig1: photon distribution at |alpha| = 2, theta = pi
  guarded("fig1", [&] {
    CsvTable t;
    t.metadata.emplace_back("alpha", "2,0");
    add_common_meta(t, pi, 0.0);
    t.columns.push_back("n");
    for (double eps : kEpsilons) t.columns.push_back("P[" + eps_label(eps) + "]");
    for (int n = 0; n <= 15; ++n) {
      std::vector<double> row{double(n)};
      for (double eps : kEpsilons)
        row.push_back(photon_probability({eps, pi, 0.0, {2.0, 0.0}}, n));
      t.rows.push_back(std::move(row));
    }
    emit("fig1", t, "Photon distribution, |alpha|=2, theta=pi", "n", "P_n");
  });

  // fig2: Mandel factor vs r, theta = pi
  guarded("fig2", [&] {
    CsvTable t = metric_sweep_table(rs, pi, 0.0, [](const MomentSet& m) { return mandel_q(m); },
                                    "Q");
    add_common_meta(t, pi, 0.0);
    emit("fig2", t, "Mandel factor vs r, theta=pi", "r", "Q");
  });

  // figW: skew information vs r, theta = pi
  guarded("figW", [&] {
    CsvTable t = metric_sweep_table(
        rs, pi, 0.0, [](const MomentSet& m) { return skew_information(m); }, "W");
    add_common_meta(t, pi, 0.0);
    emit("figW", t, "Skew information vs r, theta=pi", "r", "W");
  });

  // fig3a/b: quadrature squeezing vs r at phi_quad = 0 and pi/2, phases zero
  for (const auto& [name, angle] : {std::pair<const char*, double>{"fig3a", 0.0},
                                    std::pair<const char*, double>{"fig3b", pi / 2.0}}) {
    const double quad = angle;
    const std::string figure = name;
    guarded(figure, [&] {
      CsvTable t = metric_sweep_table(
          rs, 0.0, 0.0,
          [quad](const MomentSet& m) { return quadrature_squeezing(m, {quad}); }, "S");
      add_common_meta(t, 0.0, 0.0);
      t.metadata.emplace_back("phi_quad", format_number(quad));
      emit(figure, t, "Quadrature squeezing vs r, phi_quad=" + format_number(quad), "r",
           "S_phi");
    });
  }

  // fig4a/b: amplitude-squared squeezing vs r at phi = 0 and pi, omega=theta=0
  for (const auto& [name, phase] : {std::pair<const char*, double>{"fig4a", 0.0},
                                    std::pair<const char*, double>{"fig4b", pi}}) {
    const double branch_phi = phase;
    const std::string figure = name;
    guarded(figure, [&] {
      CsvTable t = metric_sweep_table(
          rs, 0.0, branch_phi, [](const MomentSet& m) { return s_ass(m); }, "S_ass");
      add_common_meta(t, 0.0, branch_phi);
      emit(figure, t, "Amplitude-squared squeezing vs r, phi=" + format_number(branch_phi), "r",
           "S_ass");
    });
  }

  // fig5: Wigner heatmaps over epsilon x |alpha|, theta = pi
  guarded("fig5", [&] {
    CsvTable summary;
    summary.columns = {"epsilon", "alpha", "min_W", "x_at_min", "p_at_min", "neg_volume"};
    add_common_meta(summary, pi, 0.0);
    for (double eps : kEpsilons)
      for (double a : {0.0, 1.0, 2.0}) {
        const HcsParams p{eps, pi, 0.0, Complex{a, 0.0}};
        const WignerGrid grid = wigner_grid(p, default_bounds(p.alpha), kDefaultGridPoints,
                                            kDefaultGridPoints, WignerMethod::ClosedForm);
        char stem[48];
        std::snprintf(stem, sizeof stem, "fig5/eps%.2f_alpha%g", eps, a);
        CsvTable t;
        t.metadata.emplace_back("epsilon", format_number(eps));
        t.metadata.emplace_back("alpha", format_number(a) + ",0");
        add_common_meta(t, pi, 0.0);
        t.metadata.emplace_back("nx", std::to_string(grid.nx));
        t.metadata.emplace_back("np", std::to_string(grid.np));
        t.columns = {"x", "p", "W"};
        for (int ix = 0; ix < grid.nx; ++ix)
          for (int ip = 0; ip < grid.np; ++ip)
            t.rows.push_back({grid.x_at(ix), grid.p_at(ip), grid.at(ix, ip)});
        write_text_file(out_dir + "/" + stem + ".csv", render_csv(t));
        result.written.push_back(out_dir + "/" + stem + ".csv");
        char title[96];
        std::snprintf(title, sizeof title, "Wigner function, eps=%.2f, |alpha|=%g, theta=pi",
                      eps, a);
        write_text_file(out_dir + "/" + stem + ".svg", svg_heatmap(grid, title));
        result.written.push_back(out_dir + "/" + stem + ".svg");
        const NegativityReport rep = negativity_report(grid);
        summary.rows.push_back({eps, a, rep.min_value, rep.min_location.real(),
                                rep.min_location.imag(), rep.negative_volume});
      }
    write_text_file(out_dir + "/fig5/negativity.csv", render_csv(summary));
    result.written.push_back(out_dir + "/fig5/negativity.csv");
  });

  return result;
}

}  // namespace hcslab::io
