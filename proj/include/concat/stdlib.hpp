// The standard library source, embedded so a machine can bootstrap without
// touching the filesystem. The same text ships as resources/stdlib.concat;
// a test keeps the two byte-identical.
#pragma once

#include "concat/error.hpp"
#include "concat/machine.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

namespace concat {

inline constexpr std::string_view kStdlibSource = R"CONCAT(
# Con-Cat standard library.
#
# Every token below is defined in Con-Cat itself and loaded at start-up,
# so `.src` can print each body and redefining any of them is fair game.
# Definitions only rely on kernel tokens and on tokens defined earlier in
# this file. Stack effects are written ( before -- after ) with the top of
# the stack on the right.

# ( x -- [x] )  wrap the top value in a list
"quote" [ [ ] ljoin ] .def

# ( L x -- L+[x] )  append x at the right end of the list
"rjoin" [ quote cat ] .def

# ( x P -- P(..) x )  run the program with the top value set aside
"dip" [ swap rjoin i ] .def

# ( x y -- x y x )  copy the second value to the top
"over" [ [ dup ] dip swap ] .def

# ( x y P -- P(..) x y )  dip under two values
"ddip" [ swap [ dip ] dip ] .def

# ( x y z P -- P(..) x y z )  dip under three values
"tdip" [ swap [ ddip ] dip ] .def

# ( x y -- )
"ddrop" [ drop drop ] .def

# ( x y z -- )
"tdrop" [ ddrop drop ] .def

# ( w x y z -- )
"drop4" [ tdrop drop ] .def

# ( n -- n+1 )
"inc" [ 1 + ] .def

# ( n -- n-1 )
"dec" [ 1 - ] .def

# ( n -- n*n )
"square" [ dup * ] .def

# ( n -- bool )
"zero?" [ 0 = ] .def

# ( n -- bool )
"even?" [ 2 mod 0 = ] .def

# ( n -- bool )
"odd?" [ even? not ] .def

# ( x y -- [x y] )
"pair" [ quote ljoin ] .def

# ( P -- .. )  run a quotation; plain dequoting under a friendlier name
"run" [ i ] .def

# ( x P -- x P(x..) )  run a quotation on a copy of the top value
"rund" [ [ dup ] dip i ] .def

# ( I T E -- .. )  run I on the stack below, pop the truth value it
# leaves, then run T or E. The condition is not undone; duplicate inside
# I whatever it consumes.
"ifte" [ [ i ] ddip choice i ] .def

# ( [P] -- [ [P] P ] )  set up self-application of a quoted program
"duco" [ dup quote swap cat ] .def

# ( B -- .. )  anonymous recursion: run B with a quotation on top that
# rebuilds itself and re-enters B when dequoted
"y" [ [ dup ljoin ] swap cat dup ljoin i ] .def

# ( B -- .. )  same as y
"fix" [ y ] .def

# ( P Q -- P++Q )  compose two quotations
"|" [ cat ] .def

# ( L x b -- L+[x] | L )  append only when the flag holds
"rjoin-if" [ [ rjoin ] [ drop ] choice i ] .def

# ( x1 .. xn n -- [x1 .. xn] )  collect the top n values into a list
"pack" [ [ dup 0 swap < ] [ dec swap [ pack ] dip rjoin ] [ drop [ ] ] ifte ] .def

# ( n P -- .. )  run the body n times; n below the quotation
"times" [ [ over 0 swap < ] [ [ dec ] dip dup ddip times ] [ ddrop ] ifte ] .def

# ( P -- r )  run a quotation on a snapshot of the stack, restore the
# stack, and push only the top value the program produced
"sim" [ stack rcut drop dup [ unstack ] ljoin swap [ swap rjoin unstack ] ljoin
        rolldown swap cat cat i ] .def

# ( I T E -- .. )  like ifte, but the condition runs on a snapshot and
# the stack is restored before the chosen branch runs
"sifte" [ stack rcut drop rcut drop rcut drop 4 pack dup 3 get
          dup [ unstack ] ljoin swap [ swap rjoin unstack ] ljoin
          rollup over 0 get cat swap
          [ dup 1 get swap 2 get choice i ] ljoin
          rolldown swap cat cat i ] .def

# ( C B -- .. )  run the body while the condition holds; the condition
# runs on a snapshot each turn and its effects are discarded
"while" [ stack rcut drop rcut drop 3 pack dup 0 get swap rcut
          dup [ unstack ] ljoin swap rolldown cat
          [ swap rjoin unstack [ dup ddip while ] [ ddrop ] choice i ] ljoin
          rolldown swap cat cat i ] .def

# ( C B -- .. )  while, written with sifte and explicit recursion
"rec-while" [ over over pair [ dup 0 get swap 1 get rec-while ] ljoin
              over swap cat swap drop [ ] sifte ] .def

# ( L v F -- r )  left fold: each turn runs F on a fresh stack holding
# the running value beneath one element; F must leave exactly one value
"fold" [ [ rollup swap dup empty? ]
         [ drop swap drop ]
         [ lcut rollup pair stack rcut drop
           swap [ unstack ] ljoin swap [ swap rjoin unstack ] ljoin
           [ stack count 1 = [ ] [ [ ] lcut ] choice i ] swap cat
           [ rolldown ] dip cat cat i
           rolldown fold ]
         ifte ] .def

# ( L -- n )  add up a list of numbers
"sum" [ 0 [ + ] fold ] .def

# ( L P -- L' )  keep the elements the test accepts
"filter" [ [ sim rjoin-if ] ljoin [ ] swap fold ] .def

# ( L P -- L' )  drop the elements the test accepts
"remove" [ [ sim not rjoin-if ] ljoin [ ] swap fold ] .def

# ( L P -- bool )  does the test accept any element?
"any?" [ [ sim swap drop or ] ljoin false swap fold ] .def

# ( L P -- L' )  transform each element; every application runs on a
# fresh stack holding only that element and must leave exactly one value
"map" [ [ over empty? ]
        [ drop drop [ ] ]
        [ swap lcut rolldown dup [ rolldown ] dip
          stack rcut drop rcut quote [ unstack ] ljoin
          swap [ swap rjoin unstack ] ljoin
          [ stack count 1 = [ ] [ [ ] lcut ] choice i ] swap cat
          rolldown swap cat cat i
          rollup map ljoin ]
        ifte ] .def

# ( L P -- L' )  map by plain recursion; the program runs in place on
# the working stack, so a careless program can reach past its element
"rec-map" [ [ over empty? ]
            [ drop drop [ ] ]
            [ swap lcut rolldown dup [ rolldown ] dip i rollup rec-map ljoin ]
            ifte ] .def

# ( L v F -- r )  fold by plain recursion, applications run in place
"rec-fold" [ [ rollup swap dup empty? ]
             [ drop swap drop ]
             [ lcut rollup [ over ] ddip rolldown i rolldown rec-fold ]
             ifte ] .def

# ( L1 L2 P -- L' )  map a two-argument program over two lists pairwise,
# stopping at the shorter list
"map2" [ [ rollup dup empty? rollup swap dup empty? rollup swap [ or ] ddip rolldown ]
         [ drop drop drop [ ] ]
         [ lcut rollup swap lcut rollup swap pair stack rcut drop
           swap [ unstack ] ljoin swap [ swap rjoin unstack ] ljoin
           [ stack count 1 = [ ] [ [ ] lcut ] choice i ] swap cat
           [ rolldown ] ddip [ swap ] dip cat cat i
           4 pack dup 3 get swap dup 2 get swap dup 1 get swap 0 get map2 ljoin ]
         ifte ] .def

# ( L -- x )  first element of a nonempty list
"first" [ lcut drop ] .def

# ( n -- [0 .. n-1] )
"range" [ [ dup 0 swap < ] [ dec dup range swap rjoin ] [ drop [ ] ] ifte ] .def

# ( n -- n! )  named recursion; the multiplications pile up in the input
# buffer and nothing is multiplied until the recursion bottoms out
"factorial" [ [ dup zero? ] [ drop 1 ] [ dup 1 - factorial * ] ifte ] .def

# ( n -- n! )  the same value by a different route
"factorial2" [ range [ inc ] map 1 [ * ] fold ] .def

# ( .. pattern -- .. )  reorder the top of the stack by a list of
# indices counted from the top before the pattern was pushed: index 0 is
# the old top. The result is pushed bottom-to-top in pattern order, so
# [ 0 1 ] is swap, [ 0 0 ] is dup and [ 0 2 1 ] is rollup.
"->" [ dup -1 [ over over < [ swap ] [ ] choice i drop ] fold inc
       swap [ pack ] dip
       swap dup count dec
       [ swap - ] ljoin swap [ swap get ] ljoin cat
       map
       [ [ over empty? ] [ ddrop ] [ [ lcut ] dip i ] ifte ] y ] .def
)CONCAT";

// Evaluates the library definitions on the given machine. The source is
// ordinary Con-Cat text, so this is the same mechanism as .load.
inline void load_stdlib(Machine& m)
{
    int sid = m.add_source("<stdlib>", "");
    RunOutcome r = m.eval(kStdlibSource, sid);
    if (!r.ok) throw Error("The standard library failed to load: " + r.error);
}

// Loads library definitions from a file instead of the embedded text.
inline void load_stdlib_file(Machine& m, const std::string& path)
{
    std::ifstream file(path);
    if (!file) throw Error("The file '" + path + "' could not be opened.");
    std::ostringstream text;
    text << file.rdbuf();
    namespace fs = std::filesystem;
    int sid = m.add_source(path, fs::path(path).parent_path().string());
    RunOutcome r = m.eval(text.str(), sid);
    if (!r.ok) throw Error("The standard library failed to load: " + r.error);
}

} // namespace concat
