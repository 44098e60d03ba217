#pragma once
#include <vector>

namespace qsurf {

// Exact maximum-weight perfect matching on a dense general graph (blossom
// primal-dual, O(n^3)).  Vertices are 1-indexed; a weight of 0 marks an
// absent edge.  The caller must guarantee a perfect matching exists among
// the positive-weight edges.  Deterministic.
class BlossomSolver {
  public:
    // w is a dense n x n matrix (row-major, 0-indexed storage for 1-indexed
    // vertices: w[(u-1)*n + (v-1)]).  Returns match[1..n] (0 = unmatched).
    const std::vector<int>& solve(int n, const std::vector<long long>& w);

  private:
    struct Edge {
        int u = 0, v = 0;
        long long w = 0;
    };
    int n_ = 0, n_x_ = 0, slots_ = 0, timer_ = 0;
    std::vector<Edge> g_;  // slots x slots
    std::vector<long long> lab_;
    std::vector<int> match_, slack_, st_, pa_, S_, vis_;
    std::vector<std::vector<int>> flower_, flower_from_;
    std::vector<int> queue_;
    size_t q_head_ = 0;

    Edge& g(int u, int v) { return g_[size_t(u) * slots_ + v]; }
    long long e_delta(const Edge& e) { return lab_[e.u] + lab_[e.v] - g(e.u, e.v).w * 2; }
    void update_slack(int u, int x);
    void set_slack(int x);
    void q_push(int x);
    void set_st(int x, int b);
    int get_pr(int b, int xr);
    void set_match(int u, int v);
    void augment(int u, int v);
    int get_lca(int u, int v);
    void add_blossom(int u, int lca, int v);
    void expand_blossom(int b);
    bool on_found_edge(const Edge& e);
    bool matching();
};

}  // namespace qsurf
