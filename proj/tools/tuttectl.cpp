// Command-line front end for the matroid / constellation / foundation
// toolkit. One verb per invocation; exit 0 on success, 1 on domain errors,
// 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tutte/constellation.hpp"
#include "tutte/foundation.hpp"
#include "tutte/homology.hpp"
#include "tutte/matroid.hpp"
#include "tutte/pasture.hpp"
#include "tutte/subconstellation.hpp"

using namespace tutte;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TutteError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matroid load_matroid(const std::string& source, bool force_file) {
  if (!force_file && is_catalog_name(source)) return catalog_matroid(source);
  return parse_matroid_text(read_file(source), source);
}

Mask parse_elems(const std::string& text, int n) {
  if (text == "E") return (Mask{1} << n) - 1;
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<int> elems;
  int e;
  while (in >> e) {
    if (e < 0 || e >= n) throw TutteError("element out of range: " + std::to_string(e));
    elems.push_back(e);
  }
  return mask_of(elems);
}

Constellation load_constellation(const Matroid& m, const std::string& cut_spec,
                                 const std::string& marks_file) {
  auto lat = std::make_shared<FlatLattice>(m);
  ModularCut cut;
  if (cut_spec == "trivial" || cut_spec.rfind("principal:", 0) == 0) {
    cut = parse_cut_spec(*lat, cut_spec);
  } else {
    cut = validate_modular_cut(*lat, parse_flat_lines(read_file(cut_spec), m.n()));
  }
  std::vector<int> marks;
  if (!marks_file.empty()) {
    for (Mask f : parse_flat_lines(read_file(marks_file), m.n())) {
      int id = lat->id_of(f);
      if (id < 0) throw TutteError("mark " + mask_to_string(f) + " is not a flat");
      marks.push_back(id);
    }
  }
  return Constellation(lat, std::move(cut), std::move(marks));
}

Pasture load_pasture(const std::string& source) {
  try {
    return Pasture::named(source);
  } catch (const TutteError&) {
    return Pasture::parse(read_file(source), source);
  }
}

json homology_json(const SimplicialComplex& k) {
  json out;
  out["faces"] = json::array();
  for (int d = 0; d <= k.dimension(); ++d) out["faces"].push_back(k.faces(d).size());
  out["homology"] = json::array();
  for (const HomologyGroup& h : all_homology(k)) {
    json g;
    g["degree"] = h.degree;
    g["free_rank"] = h.free_rank;
    g["torsion"] = json::array();
    for (const Int& t : h.torsion) g["torsion"].push_back(t.str());
    out["homology"].push_back(g);
  }
  out["euler_characteristic"] = k.euler_characteristic();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid lattices, Tutte constellations, homology certificates and foundations"};
  app.require_subcommand(1);

  std::string matroid_src, cut_spec = "trivial", marks_file, flat_str, from_str, to_str, path_str;
  std::string target_name, source_name;
  bool force_file = false, json_out = false, paranoid = false;
  int corank = -1, sigma_level = 2, degree = -1, field = 0, max_atoms = 4;

  auto add_matroid_arg = [&](CLI::App* cmd) {
    cmd->add_option("matroid", matroid_src, "catalog name or matroid file")->required();
    cmd->add_flag("--file", force_file, "treat the matroid argument as a file path");
  };
  auto add_cut_args = [&](CLI::App* cmd) {
    cmd->add_option("--cut", cut_spec, "trivial | principal:<elems> | <file>");
    cmd->add_option("--marks", marks_file, "marks file (one flat per line)");
  };

  auto* c_flats = app.add_subcommand("flats", "lattice of flats");
  add_matroid_arg(c_flats);
  c_flats->add_option("--corank", corank, "restrict to flats of this corank");
  c_flats->add_flag("--json", json_out);

  auto* c_graph = app.add_subcommand("tutte-graph", "Tutte graph of a constellation");
  add_matroid_arg(c_graph);
  add_cut_args(c_graph);
  c_graph->add_flag("--json", json_out);

  auto* c_path = app.add_subcommand("tutte-path", "shortest Tutte path on a flat");
  add_matroid_arg(c_path);
  add_cut_args(c_path);
  c_path->add_option("--on", flat_str, "flat the path must stay on (comma separated)")->required();
  c_path->add_option("--from", from_str, "start hyperplane")->required();
  c_path->add_option("--to", to_str, "end hyperplane")->required();

  auto* c_classify_path = app.add_subcommand("classify-path", "classify an elementary Tutte path");
  add_matroid_arg(c_classify_path);
  add_cut_args(c_classify_path);
  c_classify_path->add_option("--path", path_str, "hyperplanes 'a,b,c;d,e,f;...'")->required();

  auto* c_extend = app.add_subcommand("extend", "single-element extension by a modular cut");
  add_matroid_arg(c_extend);
  add_cut_args(c_extend);

  auto* c_homology = app.add_subcommand("homology", "integral homology of a sigma complex");
  add_matroid_arg(c_homology);
  add_cut_args(c_homology);
  c_homology->add_option("--sigma", sigma_level, "complex level 0, 1 or 2")->required();
  c_homology->add_option("--degree", degree, "report only this degree");
  c_homology->add_flag("--json", json_out);

  auto* c_sigma = app.add_subcommand("sigma", "dump a sigma complex");
  add_matroid_arg(c_sigma);
  add_cut_args(c_sigma);
  c_sigma->add_option("--sigma", sigma_level, "complex level 0, 1 or 2")->required();

  auto* c_l3 = app.add_subcommand("search-l3", "higher-homotopy subconstellation class search");
  c_l3->add_option("--max-atoms", max_atoms, "atom bound (at most 5)")->required();
  c_l3->add_flag("--json", json_out);

  auto* c_foundation = app.add_subcommand("foundation", "foundation of a matroid");
  add_matroid_arg(c_foundation);
  c_foundation->add_flag("--paranoid", paranoid, "emit redundant relation instances");
  c_foundation->add_flag("--json", json_out);

  auto* c_cross = app.add_subcommand("cross-ratios", "universal cross-ratio table");
  add_matroid_arg(c_cross);

  auto* c_rel = app.add_subcommand("check-relations", "evaluate the cross-ratio relations");
  add_matroid_arg(c_rel);
  c_rel->add_flag("--json", json_out);

  auto* c_count = app.add_subcommand("count-reps", "representation counts over GF(q)");
  add_matroid_arg(c_count);
  c_count->add_option("--field", field, "prime power q <= 9")->required();
  c_count->add_flag("--json", json_out);

  auto* c_classify = app.add_subcommand("classify", "classification flags");
  add_matroid_arg(c_classify);
  c_classify->add_flag("--json", json_out);

  auto* c_hom = app.add_subcommand("pasture-hom", "morphisms between pastures");
  c_hom->add_option("--source", source_name, "pasture name or file")->required();
  c_hom->add_option("--target", target_name, "pasture name or file (finite units)")->required();
  c_hom->add_flag("--json", json_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_flats) {
      Matroid m = load_matroid(matroid_src, force_file);
      FlatLattice lat{m};
      std::vector<int> ids;
      if (corank >= 0) ids = lat.of_corank(corank);
      else
        for (int i = 0; i < lat.size(); ++i) ids.push_back(i);
      if (json_out) {
        json out;
        out["n"] = m.n();
        out["rank"] = m.rank();
        out["flats"] = json::array();
        for (int id : ids) {
          json f;
          f["elements"] = elements_of(lat.flat_mask(id));
          f["rank"] = lat.rank_of(id);
          f["corank"] = lat.corank_of(id);
          f["indecomposable"] = lat.indecomposable(id);
          out["flats"].push_back(f);
        }
        std::cout << out.dump(2) << "\n";
      } else {
        for (int id : ids)
          std::cout << "{" << mask_to_string(lat.flat_mask(id)) << "}  rank " << lat.rank_of(id)
                    << "  corank " << lat.corank_of(id)
                    << (lat.indecomposable(id) ? "  indecomposable" : "  decomposable") << "\n";
      }
    } else if (*c_graph) {
      Matroid m = load_matroid(matroid_src, force_file);
      Constellation tau = load_constellation(m, cut_spec, marks_file);
      TutteGraph g = tutte_graph(tau);
      const FlatLattice& lat = tau.lattice();
      if (json_out) {
        json out;
        out["vertices"] = json::array();
        for (int v : g.vertices) out["vertices"].push_back(elements_of(lat.flat_mask(v)));
        out["edges"] = json::array();
        for (auto& e : g.edges) {
          json je;
          je["ends"] = {elements_of(lat.flat_mask(e[0])), elements_of(lat.flat_mask(e[1]))};
          je["meet"] = elements_of(lat.flat_mask(e[2]));
          out["edges"].push_back(je);
        }
        out["connected"] = g.connected;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "vertices: " << g.vertices.size() << "\n";
        for (int v : g.vertices) std::cout << "  {" << mask_to_string(lat.flat_mask(v)) << "}\n";
        std::cout << "edges: " << g.edges.size() << "\n";
        for (auto& e : g.edges)
          std::cout << "  {" << mask_to_string(lat.flat_mask(e[0])) << "} -- {"
                    << mask_to_string(lat.flat_mask(e[1])) << "}   meet {"
                    << mask_to_string(lat.flat_mask(e[2])) << "}\n";
        std::cout << "connected: " << (g.connected ? "yes" : "no") << "\n";
      }
    } else if (*c_path) {
      Matroid m = load_matroid(matroid_src, force_file);
      Constellation tau = load_constellation(m, cut_spec, marks_file);
      auto path = find_tutte_path(tau, parse_elems(flat_str, m.n()), parse_elems(from_str, m.n()),
                                  parse_elems(to_str, m.n()));
      for (std::size_t i = 0; i < path.size(); ++i)
        std::cout << (i ? " -> " : "") << "{" << mask_to_string(tau.lattice().flat_mask(path[i]))
                  << "}";
      std::cout << "\n";
    } else if (*c_classify_path) {
      Matroid m = load_matroid(matroid_src, force_file);
      Constellation tau = load_constellation(m, cut_spec, marks_file);
      std::vector<int> path;
      std::istringstream in(path_str);
      std::string part;
      while (std::getline(in, part, ';')) {
        int id = tau.lattice().id_of(m.closure_mask(parse_elems(part, m.n())));
        if (id < 0) throw TutteError("path term is not a flat: " + part);
        path.push_back(id);
      }
      auto result = classify_elementary(tau, path);
      if (result)
        std::cout << "kind " << result->kind << ", type " << result->type << ", extended type "
                  << result->extended_type << "\n";
      else
        std::cout << "none\n";
    } else if (*c_extend) {
      Matroid m = load_matroid(matroid_src, force_file);
      auto lat = std::make_shared<FlatLattice>(m);
      ModularCut cut;
      if (cut_spec == "trivial" || cut_spec.rfind("principal:", 0) == 0)
        cut = parse_cut_spec(*lat, cut_spec);
      else
        cut = validate_modular_cut(*lat, parse_flat_lines(read_file(cut_spec), m.n()));
      std::cout << matroid_to_text(extend_by_cut(*lat, cut));
    } else if (*c_homology || *c_sigma) {
      Matroid m = load_matroid(matroid_src, force_file);
      Constellation tau = load_constellation(m, cut_spec, marks_file);
      SimplicialComplex k = sigma_complex(tau, sigma_level);
      if (*c_sigma) {
        std::cout << k.dump();
      } else if (json_out) {
        std::cout << homology_json(k).dump(2) << "\n";
      } else {
        for (const HomologyGroup& h : all_homology(k)) {
          if (degree >= 0 && h.degree != degree) continue;
          std::cout << "H" << h.degree << " = " << h.to_string() << "\n";
        }
      }
    } else if (*c_l3) {
      auto list = search_l3(max_atoms);
      if (json_out) {
        json out = json::array();
        for (auto& e : list) {
          json je;
          je["id"] = e.id;
          je["template"] = e.tmpl.name;
          je["seeded"] = e.seeded;
          if (!e.seeded) {
            je["h1"] = e.h1.to_string();
            je["h2"] = e.h2.to_string();
          }
          out.push_back(je);
        }
        std::cout << out.dump(2) << "\n";
      } else {
        for (auto& e : list) {
          std::cout << (e.seeded ? "base " : "found") << "  class " << e.id << "  [" << e.tmpl.name
                    << "]";
          if (!e.seeded)
            std::cout << "  H1(<complex) = " << e.h1.to_string()
                      << ", H2(<complex) = " << e.h2.to_string();
          std::cout << "\n";
        }
      }
    } else if (*c_foundation || *c_cross) {
      Matroid m = load_matroid(matroid_src, force_file);
      FoundationReport r = foundation(m, paranoid);
      if (*c_cross) {
        for (const auto& [idx, val] : r.cross_ratios)
          std::cout << "<" << mask_to_string(r.matrix.hyperplanes[idx.h1]) << " , "
                    << mask_to_string(r.matrix.hyperplanes[idx.h2]) << " | "
                    << mask_to_string(r.matrix.hyperplanes[idx.h3]) << " , "
                    << mask_to_string(r.matrix.hyperplanes[idx.h4])
                    << "> = " << r.foundation.to_string(val) << "\n";
      } else if (json_out) {
        json out;
        out["matroid"] = m.name().empty() ? matroid_src : m.name();
        out["edges"] = r.graph.edges.size();
        out["forest_edges"] = r.graph.forest_size();
        out["free_variables"] = r.matrix.num_vars;
        out["units"] = r.foundation.signature();
        out["recognized"] = r.recognized.display;
        out["factors"] = r.recognized.factors;
        out["flags"]["regular"] = r.flags.regular;
        out["flags"]["binary"] = r.flags.binary;
        out["flags"]["ternary"] = r.flags.ternary;
        out["flags"]["wlum"] = r.flags.wlum;
        out["flags"]["orientable"] = r.flags.orientable;
        if (r.flags.dyadic_known) out["flags"]["dyadic"] = r.flags.dyadic;
        if (r.flags.dressian_known)
          out["flags"]["dressian"] = {{"m", r.flags.dressian_m}, {"p", r.flags.dressian_p}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << report_to_text(r);
      }
    } else if (*c_rel) {
      Matroid m = load_matroid(matroid_src, force_file);
      auto checks = check_R_relations(m);
      bool all_ok = true;
      if (json_out) {
        json out = json::array();
        for (auto& c : checks) {
          out.push_back(
              {{"relation", c.relation}, {"instances", c.instances}, {"failures", c.failures}});
          if (c.failures) all_ok = false;
        }
        std::cout << out.dump(2) << "\n";
      } else {
        for (auto& c : checks) {
          std::cout << c.relation << ": " << c.instances << " instance(s), " << c.failures
                    << " failure(s) " << (c.failures == 0 ? "[pass]" : "[FAIL]") << "\n";
          if (c.failures) all_ok = false;
        }
      }
      if (!all_ok) return 1;
    } else if (*c_count) {
      Matroid m = load_matroid(matroid_src, force_file);
      RepresentationCount c = count_representations(m, Pasture::named("F" + std::to_string(field)));
      if (json_out) {
        json out;
        out["hom_count"] = c.via_hom;
        out["brute_force_count"] = c.via_brute_force;
        out["agree"] = c.via_hom == c.via_brute_force;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "hom count: " << c.via_hom << "\n";
        std::cout << "brute force count: " << c.via_brute_force << "\n";
        std::cout << "agree: " << (c.via_hom == c.via_brute_force ? "yes" : "no") << "\n";
      }
      if (c.via_hom != c.via_brute_force) return 1;
    } else if (*c_classify) {
      Matroid m = load_matroid(matroid_src, force_file);
      ClassificationFlags flags = classify(m);
      if (json_out) {
        json out;
        out["regular"] = flags.regular;
        out["binary"] = flags.binary;
        out["ternary"] = flags.ternary;
        out["wlum"] = flags.wlum;
        out["orientable"] = flags.orientable;
        if (flags.dyadic_known) out["dyadic"] = flags.dyadic;
        if (flags.dressian_known)
          out["dressian"] = {{"m", flags.dressian_m}, {"p", flags.dressian_p}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << flags.to_string();
      }
    } else if (*c_hom) {
      Pasture src = load_pasture(source_name);
      Pasture dst = load_pasture(target_name);
      auto homs = hom_enumerate(src, dst);
      if (json_out) {
        json out;
        out["count"] = homs.size();
        out["morphisms"] = json::array();
        for (auto& f : homs) {
          json im = json::array();
          for (std::size_t g = 0; g < src.gen_names().size(); ++g)
            im.push_back(
                {{"generator", src.gen_names()[g]}, {"image", dst.to_string(f.gen_images[g])}});
          out["morphisms"].push_back(im);
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "morphisms: " << homs.size() << "\n";
        for (auto& f : homs) {
          std::cout << " ";
          for (std::size_t g = 0; g < src.gen_names().size(); ++g)
            std::cout << " " << src.gen_names()[g] << " -> " << dst.to_string(f.gen_images[g]);
          std::cout << "\n";
        }
      }
    }
  } catch (const TutteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
