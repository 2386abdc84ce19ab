// Deterministic tree families and random trees for tests and benchmarks.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "trp/xml_tree.hpp"

namespace trp {

// The five-book document: books(book(author,title,isbn) x 5).
std::string books_xml();

// Perfect binary tree of depth d, f-labeled inner nodes, a-labeled leaves.
BinaryTree gen_perfect_binary(int d);
// Perfect binary tree of depth 2^i whose leaves carry distinct names leaf_0, leaf_1, ...
BinaryTree gen_M(int i);
// Spine of 2^n f-nodes; left child of spine node i is l(i), the spine ends in l(2^n).
BinaryTree gen_U(int n);
char u_label(std::uint64_t i);

// Random XML element tree with at most max_nodes elements over labels e0..e{labels-1}.
BinaryTree random_tree(std::mt19937_64& rng, std::size_t max_nodes, int labels);

}  // namespace trp
