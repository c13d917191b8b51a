import java.util.*;

public class Main {
    public static void main(String[] args) {
        int x = 4;                                  // v1 s1
        System.out.println(x * x);                  // s2
    }

    // never called: nothing below is counted
    static void unused(int[] a) {
        for (int i = 0; i < a.length; i++)
            for (int j = 0; j < a.length; j++)
                Arrays.sort(a);
        HashMap<Integer, Integer> m = new HashMap<>();
    }

    static int alsoUnused() { return alsoUnused(); }
}
