#include "pnetkit/corpus.hpp"

#include <cstdlib>

namespace pnetkit {

namespace {

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> fs;

  fs.push_back({"fig1", "fig1.pnet", "",
                "four-place weighted circuit pair; the running example",
                {{"wmg_le", {"yes", "every place has at most one input and one output"}},
                 {"ladder", {"LiveWMG", ""}},
                 {"choice_free", {"yes", ""}},
                 {"live", {"yes", "both circuit subsystems are live"}},
                 {"bound", {"4", "p3 peaks at 4 tokens"}},
                 {"reversible", {"yes", "strongly connected reachability graph"}},
                 {"rg_states", {"6", ""}},
                 {"conservative", {"yes", "weights (2,3,1,1) annihilate the incidence matrix"}},
                 {"consistent", {"yes", "T-semiflow (2,1,1)"}},
                 {"structurally_bounded", {"yes", "conservative"}},
                 {"directed", {"yes", "live WMG<= have directed potential reachability"}},
                 {"prr", {"equal", "live WMG<="}}}});

  fs.push_back({"deadwmg", "deadwmg.pnet", "",
                "deadlocked unit-weighted MG<= with a self-loop feeder",
                {{"wmg_le", {"yes", ""}},
                 {"ordinary", {"yes", ""}},
                 {"live", {"no", "t never enabled from (0,0)"}},
                 {"bounded", {"yes", "single-state reachability graph"}},
                 {"conservative", {"no", "p1 only receives tokens"}},
                 {"consistent", {"no", "t strictly produces"}},
                 {"structurally_bounded", {"no", "firing t pumps p1"}},
                 {"prr", {"notequal", "(0,1) solves the state equation but t is dead"}}}});

  fs.push_back({"cepramg_left", "cepramg_left.pnet", "",
                "live, reversible, bounded net with one shared place whose reverse deadlocks",
                {{"amg", {"yes", "resource p5 with pairing (t2,t4),(t3,t5) shape"}},
                 {"h1s_wmg_le", {"yes", "deleting p5 leaves a WMG<="}},
                 {"live", {"yes", ""}},
                 {"reversible", {"yes", ""}},
                 {"bounded", {"yes", ""}},
                 {"rev_live", {"no", "the reverse reaches a deadlock by firing t2 twice"}},
                 {"property_R", {"no", "the reverse is not reversible"}},
                 {"prr", {"notequal", "(0,0,2,0,0,1,0) is a potentially reachable deadlock"}}}});

  fs.push_back({"cepramg_mid", "cepramg_mid.pnet", "",
                "two shared places; property R holds in both directions yet PR exceeds R",
                {{"amg", {"yes", ""}},
                 {"live", {"yes", ""}},
                 {"reversible", {"yes", ""}},
                 {"bounded", {"yes", ""}},
                 {"property_R", {"yes", "both the system and its reverse are reversible"}},
                 {"ladder", {"none", "the minimal siphon {p3,p4} induces a non-conservative subnet"}},
                 {"prr", {"notequal", "(1,1,0,0) is a potentially reachable dead marking"}}}});

  fs.push_back({"ce2choice", "ce2choice.pnet", "",
                "live net, two shared places, an ill-formed minimal siphon {p9,p10}",
                {{"amg", {"yes", ""}},
                 {"live", {"yes", ""}},
                 {"reversible", {"yes", ""}},
                 {"bounded", {"yes", ""}},
                 {"property_R", {"yes", "the reverse is also live, reversible and bounded"}},
                 {"min_siphons_include", {"p9 p10", "t4,t5 feed it and t3,t4,t5 drain it"}},
                 {"prr", {"notequal", "the vector (2,1,2,0,1) unmarks the siphon"}}}});

  fs.push_back({"twoewmg", "twoewmg.pnet", "",
                "non-homogeneous net with four shared places, properties L and R",
                {{"wmg_le", {"no", "p1 and p2 branch"}},
                 {"homogeneous", {"no", "p1 feeds t0 with weight 1 and t1 with weight 2"}},
                 {"shared", {"4", "p0..p3 all branch"}},
                 {"ks_wmg_le", {"yes", "deleting the shared places leaves nothing branching"}},
                 {"one_conservative", {"yes", "all columns sum to zero"}},
                 {"property_L", {"yes", ""}},
                 {"property_R", {"yes", ""}},
                 {"min_siphons", {"p0 p1 | p2 p3", "each pair closes its own token loop"}},
                 {"prr", {"notequal", "(1,1,1,1) solves the state equation, is dead, unreached"}}}});

  fs.push_back({"nonrev2p_a", "nonrev2p_a.pnet", "",
                "unit-weighted, live, structurally bounded, two shared places; a T-sequence "
                "fires yet the system is not reversible",
                {{"ordinary", {"yes", ""}},
                 {"shared", {"2", "p1 and p2"}},
                 {"live", {"yes", ""}},
                 {"structurally_bounded", {"yes", ""}},
                 {"reversible", {"no", "the graph splits into two components"}},
                 {"rg_states", {"8", ""}},
                 {"tsequence", {"t0 t3 t2 t1", "returns to the initial marking"}}}});

  fs.push_back({"nonrev2p_mg", "nonrev2p_mg.pnet", "",
                "well-formed marked graph that merges into nonrev2p_a",
                {{"marked_graph", {"yes", ""}},
                 {"conservative", {"yes", ""}}}});

  fs.push_back({"campos_mg", "campos_mg.pnet", "",
                "well-formed marked graph that merges into campos_merged",
                {{"marked_graph", {"yes", ""}},
                 {"conservative", {"yes", ""}}}});

  fs.push_back({"campos_merged", "campos_merged.pnet", "",
                "1-conservative, consistent, live, non-reversible merge of campos_mg",
                {{"one_conservative", {"yes", ""}},
                 {"consistent", {"yes", "(1,1,1,1) is a T-semiflow"}},
                 {"live", {"yes", ""}},
                 {"reversible", {"no", ""}},
                 {"shared", {"3", "p0, p1 and p2"}},
                 {"tsequence", {"t3 t2 t1 t0", "returns to the initial marking"}}}});

  fs.push_back({"nonrev_triangle", "nonrev_triangle.pnet", "nonrev_triangle.pcmg",
                "place-composed triangle of self-loop circuits: live, not reversible",
                {{"well_structured", {"yes", "all three components are strongly connected MGs"}},
                 {"acyclic_g", {"no", "the composition graph is a triangle"}},
                 {"live", {"yes", ""}},
                 {"reversible", {"no", ""}},
                 {"amg", {"no", "every admissible pairing needs a marked path"}},
                 {"tsequence", {"no", "non-reversibility forbids one in this class"}}}});

  fs.push_back({"nonstruclive_triangle", "nonstruclive_triangle.pnet",
                "nonstruclive_triangle.pcmg",
                "reversed triangle composition, empty marking; a minimal siphon spans the "
                "three shared places",
                {{"well_structured", {"yes", ""}},
                 {"acyclic_g", {"no", ""}},
                 {"live", {"no", "the empty marking enables nothing"}},
                 {"min_siphons_include", {"p0 p2 p4", "its subnet branches at t0, t2, t4"}}}});

  fs.push_back({"fig_pcmg_left", "fig_pcmg_left.pnet", "fig_pcmg_left.pcmg",
                "single-edge composition: a two-place circuit",
                {{"well_structured", {"yes", ""}},
                 {"acyclic_g", {"yes", ""}},
                 {"live", {"yes", "the only minimal siphon holds a token"}},
                 {"prr", {"equal", "live well-structured acyclic composition"}}}});

  fs.push_back({"fig_pcmg_right", "fig_pcmg_right.pnet", "fig_pcmg_right.pcmg",
                "single-transition component: composable but not well-structured",
                {{"well_structured", {"no", "the component is not strongly connected"}}}});

  fs.push_back({"amgvspcmg_mid", "amgvspcmg_mid.pnet", "amgvspcmg_mid.pcmg",
                "triangle of two-place circuits; shared places pairwise connected",
                {{"well_structured", {"yes", ""}},
                 {"acyclic_g", {"no", ""}},
                 {"live", {"yes", ""}},
                 {"amg", {"no", "no connecting paths exist once the shared places are removed"}}}});

  fs.push_back({"amgvspcmg_right", "amgvspcmg_right.pnet", "",
                "three shared places all touching t0",
                {{"amg", {"yes", "identity pairings need no connecting paths"}},
                 {"live", {"yes", ""}},
                 {"ladder", {"AmgConsSiphons", "every minimal siphon is a conservative loop"}},
                 {"prr", {"equal", ""}}}});

  fs.push_back({"examg_left", "examg_left.pnet", "",
                "resource place p5 over a four-transition marked graph",
                {{"amg", {"yes", "pairing (t1,t3),(t2,t4) with unmarked paths via p3 and p6"}},
                 {"live", {"yes", ""}},
                 {"reversible", {"yes", "liveness suffices in this class"}},
                 {"rev_live", {"no", "the reverse starves t1"}},
                 {"property_R", {"no", "the reverse is not reversible"}},
                 {"ladder", {"none", "every rule needs property R here"}},
                 {"prr", {"notequal", "a solution lies outside the complete graph"}}}});

  fs.push_back({"examg_right", "examg_right.pnet", "",
                "same structure with p3 marked",
                {{"amg", {"no", "every pairing runs through a marked place"}}}});

  fs.push_back({"onechoicewmg", "onechoicewmg.pnet", "",
                "homogeneous net with a single shared place p",
                {{"homogeneous", {"yes", "p always feeds with weight 2"}},
                 {"shared", {"1", ""}},
                 {"h1s_wmg_le", {"yes", "deleting p leaves a WMG<="}}}});

  fs.push_back({"ssystem_nonrev", "ssystem_nonrev.pnet", "",
                "weighted homogeneous state-machine shape over a path of buffers",
                {{"homogeneous", {"yes", ""}},
                 {"live", {"yes", ""}},
                 {"reversible", {"no", "after t2 the initial marking is out of reach"}}}});

  fs.push_back({"initdirnotdir", "initdirnotdir.pnet", "",
                "one token, two competing consumers",
                {{"initially_directed", {"yes", "every solution is reachable"}},
                 {"directed", {"no", "the two successors never meet"}}}});

  fs.push_back({"exsubclasses1_left", "exsubclasses1_left.pnet", "",
                "ordinary two-place example",
                {{"ordinary", {"yes", ""}}, {"homogeneous", {"yes", ""}}, {"shared", {"1", ""}}}});

  fs.push_back({"exsubclasses1_right", "exsubclasses1_right.pnet", "",
                "weighted homogeneous two-place example",
                {{"ordinary", {"no", ""}}, {"homogeneous", {"yes", ""}}, {"shared", {"1", ""}}}});

  fs.push_back({"exsubclasses2_hfc", "exsubclasses2_hfc.pnet", "",
                "two places jointly feeding two transitions",
                {{"hfc", {"yes", "equal output sets and equal weights per place"}},
                 {"choice_free", {"no", ""}}}});

  fs.push_back({"exsubclasses2_hac", "exsubclasses2_hac.pnet", "",
                "asymmetric choice between p1 and p2",
                {{"free_choice", {"no", ""}},
                 {"asymmetric_choice", {"yes", "p1's consumers are among p2's"}},
                 {"homogeneous", {"yes", ""}}}});

  fs.push_back({"exsubclasses2_nonac", "exsubclasses2_nonac.pnet", "",
                "incomparable consumer sets at the synchronization t1",
                {{"asymmetric_choice", {"no", "neither output set contains the other"}},
                 {"homogeneous", {"yes", ""}}}});

  fs.push_back({"exsubclasses2_sm", "exsubclasses2_sm.pnet", "",
                "one place, two unit self-loops",
                {{"state_machine", {"yes", ""}}, {"choice_free", {"no", ""}}}});

  fs.push_back({"figcomparison_h1s", "figcomparison_h1s.pnet", "",
                "one homogeneous shared place over a WMG<=",
                {{"h1s_wmg_le", {"yes", ""}}}});

  fs.push_back({"figcomparison_hfc", "figcomparison_hfc.pnet", "",
                "single shared place with equal-weight consumers",
                {{"hfc", {"yes", ""}}, {"choice_free", {"no", ""}}}});

  fs.push_back({"figproof_acyclic_pcmg", "figproof_acyclic_pcmg.pnet",
                "figproof_acyclic_pcmg.pcmg",
                "five components over an acyclic composition graph",
                {{"well_structured", {"yes", ""}},
                 {"acyclic_g", {"yes", ""}},
                 {"live", {"yes", "all minimal siphons and traps are marked"}},
                 {"ladder", {"PcmgAcyclic", ""}},
                 {"prr", {"equal", "live well-structured acyclic composition"}}}});

  return fs;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> fs = make_fixtures();
  return fs;
}

const Fixture& fixture(const std::string& key) {
  for (const auto& f : fixtures())
    if (f.key == key) return f;
  throw pnet_error("unknown fixture: " + key);
}

std::string fixture_dir() {
  if (const char* env = std::getenv("PNETKIT_FIXTURES")) return env;
#ifdef PNETKIT_FIXTURE_DIR
  return PNETKIT_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

System load_fixture(const Fixture& f) { return load_net_file(fixture_dir() + "/" + f.file); }

System load_fixture(const std::string& key) { return load_fixture(fixture(key)); }

PcmgSpec load_fixture_pcmg(const Fixture& f) {
  if (f.pcmg_file.empty()) throw pnet_error("fixture " + f.key + " has no construction spec");
  return load_pcmg_file(fixture_dir() + "/pcmg/" + f.pcmg_file);
}

}  // namespace pnetkit
