import java.util.*;

public class Main {
    public static void main(String[] args) {
        HashMap<Long, Long> memo = new HashMap<>();            // v1 s1 (HashMap)
        System.out.println(ways(50, memo));                    // s2
    }

    static long ways(long n, HashMap<Long, Long> memo) {
        if (n <= 1) return 1;                                  // if1 s3, s4
        if (memo.containsKey(n)) return memo.get(n);           // if2 s5, s6
        long r = ways(n - 1, memo) + ways(n - 2, memo);        // v2 s7 (self-loop ways/2)
        memo.put(n, r);                                        // s8
        return r;                                              // s9
    }
}
