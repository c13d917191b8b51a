import java.util.*;

public class Main {
    public static void main(String[] args) {
        int[][] pairs = new int[3][2];                                             // v1 s1
        Arrays.sort(pairs, (p, q) -> p[0] != q[0] ? p[0] - q[0] : p[1] - q[1]);   // sort s2
        TreeMap<Integer, Integer> tm = new TreeMap<>();                            // v2 s3 (TreeMap ignored)
        tm.put(1, 2);                                                              // s4
    }
}
